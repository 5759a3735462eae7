#ifndef JETFORGE_ATOM_HPP
#define JETFORGE_ATOM_HPP

#include <cstdint>
#include <deque>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace jetforge {

// Atoms are the indeterminates every expression is built from. They are
// interned globally: structurally equal atoms always share one id.
enum class AtomKind : uint8_t {
  IndepVar,   // base variable x^i (slot is 1-based)
  JetCoord,   // derivative coordinate u_sigma; empty index = u itself
  Param,      // constant parameter (lambda, alpha, ...)
  FuncDeriv,  // formal partial derivative of a declared function symbol
};

using AtomId = int32_t;

struct AtomData {
  AtomKind kind;
  std::string name;        // variable / parameter / function / depvar name
  int slot = 0;            // IndepVar: 1-based slot of the variable
  std::vector<int> index;  // JetCoord: sorted multiindex over indep slots;
                           // FuncDeriv: sorted multiindex over argument slots
  std::string key;         // canonical structural key (also the sort key)
};

class AtomTable {
 public:
  static AtomTable& instance();

  AtomId indep(const std::string& name, int slot);
  AtomId jet(const std::string& depVar, std::vector<int> multiIndex);
  AtomId param(const std::string& name);
  AtomId funcDeriv(const std::string& funcName, std::vector<int> partialIndex);

  const AtomData& data(AtomId id) const;
  // Structural order, independent of interning order.
  bool less(AtomId a, AtomId b) const;

 private:
  AtomId intern(AtomData d);
  mutable std::shared_mutex mu_;
  std::deque<AtomData> atoms_;  // deque: interning never invalidates data() references
  std::unordered_map<std::string, AtomId> byKey_;
};

inline const AtomData& atomData(AtomId id) { return AtomTable::instance().data(id); }
inline bool atomLess(AtomId a, AtomId b) { return AtomTable::instance().less(a, b); }

std::string atomToString(AtomId id);

}  // namespace jetforge

#endif
