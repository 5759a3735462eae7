#include "jetforge/jet_context.hpp"

namespace jetforge {

JetContext JetContext::standard(int uOrder) {
  JetContext c;
  c.indepNames = {"x", "y", "z", "t"};
  c.deps.push_back({"u", uOrder});
  return c;
}

AtomId JetContext::x(int slot) const {
  return AtomTable::instance().indep(indepNames.at(static_cast<size_t>(slot - 1)), slot);
}

AtomId JetContext::jet(const std::string& dep, std::vector<int> idx) const {
  if (static_cast<int>(idx.size()) > kHardOrderCap) throw OrderOverflow{};
  return AtomTable::instance().jet(dep, std::move(idx));
}

AtomId JetContext::param(const std::string& name) const { return AtomTable::instance().param(name); }

AtomId JetContext::fd(const std::string& func, std::vector<int> partialIdx) const {
  return AtomTable::instance().funcDeriv(func, std::move(partialIdx));
}

const FuncSymbolDecl* JetContext::findFunc(const std::string& name) const {
  for (auto& f : funcs)
    if (f.name == name) return &f;
  return nullptr;
}

const DepVarDecl* JetContext::findDep(const std::string& name) const {
  for (auto& d : deps)
    if (d.name == name) return &d;
  return nullptr;
}

int JetContext::indepSlot(const std::string& name) const {
  for (size_t i = 0; i < indepNames.size(); ++i)
    if (indepNames[i] == name) return static_cast<int>(i) + 1;
  return 0;
}

JetContext& JetContext::addDep(const std::string& name, int maxOrder) {
  deps.push_back({name, maxOrder});
  return *this;
}

JetContext& JetContext::addFunc(const std::string& name, std::vector<AtomId> args, int maxOrder) {
  funcs.push_back({name, std::move(args), maxOrder});
  return *this;
}

JetContext& JetContext::addParam(const std::string& name) {
  params.push_back(name);
  return *this;
}

}  // namespace jetforge
