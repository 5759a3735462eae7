#include "jetforge/atom.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace jetforge {

AtomTable& AtomTable::instance() {
  static AtomTable t;
  return t;
}

static std::string makeKey(const AtomData& d) {
  std::ostringstream os;
  switch (d.kind) {
    case AtomKind::IndepVar: os << "X:"; break;
    case AtomKind::JetCoord: os << "J:"; break;
    case AtomKind::Param: os << "P:"; break;
    case AtomKind::FuncDeriv: os << "F:"; break;
  }
  os << d.name;
  if (d.kind == AtomKind::IndepVar) os << ":" << d.slot;
  if (!d.index.empty() || d.kind == AtomKind::JetCoord || d.kind == AtomKind::FuncDeriv) {
    os << ":[";
    for (size_t i = 0; i < d.index.size(); ++i) {
      if (i) os << ",";
      os << d.index[i];
    }
    os << "]";
  }
  return os.str();
}

AtomId AtomTable::intern(AtomData d) {
  std::sort(d.index.begin(), d.index.end());
  d.key = makeKey(d);
  {
    std::shared_lock rl(mu_);
    auto it = byKey_.find(d.key);
    if (it != byKey_.end()) return it->second;
  }
  std::unique_lock wl(mu_);
  auto it = byKey_.find(d.key);
  if (it != byKey_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atoms_.size());
  byKey_.emplace(d.key, id);
  atoms_.push_back(std::move(d));
  return id;
}

AtomId AtomTable::indep(const std::string& name, int slot) {
  AtomData d;
  d.kind = AtomKind::IndepVar;
  d.name = name;
  d.slot = slot;
  return intern(std::move(d));
}

AtomId AtomTable::jet(const std::string& depVar, std::vector<int> mi) {
  AtomData d;
  d.kind = AtomKind::JetCoord;
  d.name = depVar;
  d.index = std::move(mi);
  return intern(std::move(d));
}

AtomId AtomTable::param(const std::string& name) {
  AtomData d;
  d.kind = AtomKind::Param;
  d.name = name;
  return intern(std::move(d));
}

AtomId AtomTable::funcDeriv(const std::string& funcName, std::vector<int> pi) {
  AtomData d;
  d.kind = AtomKind::FuncDeriv;
  d.name = funcName;
  d.index = std::move(pi);
  return intern(std::move(d));
}

const AtomData& AtomTable::data(AtomId id) const {
  std::shared_lock rl(mu_);
  return atoms_.at(static_cast<size_t>(id));
}

bool AtomTable::less(AtomId a, AtomId b) const {
  if (a == b) return false;
  std::shared_lock rl(mu_);
  const AtomData& da = atoms_.at(static_cast<size_t>(a));
  const AtomData& db = atoms_.at(static_cast<size_t>(b));
  if (da.kind != db.kind) return da.kind < db.kind;
  if (da.name != db.name) return da.name < db.name;
  if (da.slot != db.slot) return da.slot < db.slot;
  if (da.index.size() != db.index.size()) return da.index.size() < db.index.size();
  return da.index < db.index;
}

std::string atomToString(AtomId id) {
  const AtomData& d = atomData(id);
  switch (d.kind) {
    case AtomKind::IndepVar:
    case AtomKind::Param:
      return d.name;
    case AtomKind::JetCoord: {
      if (d.index.empty()) return d.name;
      std::ostringstream os;
      os << d.name << "[";
      for (size_t i = 0; i < d.index.size(); ++i) {
        if (i) os << ",";
        os << d.index[i];
      }
      os << "]";
      return os.str();
    }
    case AtomKind::FuncDeriv: {
      if (d.index.empty()) return d.name;
      std::ostringstream os;
      os << d.name << "{";
      for (size_t i = 0; i < d.index.size(); ++i) {
        if (i) os << ",";
        os << d.index[i];
      }
      os << "}";
      return os.str();
    }
  }
  throw std::logic_error("bad atom kind");
}

}  // namespace jetforge
