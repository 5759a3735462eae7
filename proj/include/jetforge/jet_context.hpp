#ifndef JETFORGE_JET_CONTEXT_HPP
#define JETFORGE_JET_CONTEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "jetforge/expr.hpp"

namespace jetforge {

struct OrderOverflow : std::runtime_error {
  OrderOverflow() : std::runtime_error("jet order exceeds the hard cap") {}
};

struct FuncSymbolDecl {
  std::string name;
  std::vector<AtomId> args;  // independent-variable or jet-coordinate atoms
  int maxOrder = 6;
};

struct DepVarDecl {
  std::string name;
  int maxOrder = 4;
};

// Declares the universe of atoms a computation lives in: base variables,
// dependent variables with order bounds, function symbols with their
// argument lists (these drive the chain rule), and parameters.
class JetContext {
 public:
  static constexpr int kHardOrderCap = 8;

  std::vector<std::string> indepNames;
  std::vector<DepVarDecl> deps;
  std::vector<FuncSymbolDecl> funcs;
  std::vector<std::string> params;

  // (x,y,z,t) with a scalar dependent variable u of order 4
  static JetContext standard(int uOrder = 4);

  int nIndep() const { return static_cast<int>(indepNames.size()); }
  AtomId x(int slot) const;  // 1-based
  AtomId jet(const std::string& dep, std::vector<int> idx) const;
  AtomId u(std::vector<int> idx) const { return jet(deps.at(0).name, std::move(idx)); }
  AtomId param(const std::string& name) const;
  AtomId fd(const std::string& func, std::vector<int> partialIdx) const;

  const FuncSymbolDecl* findFunc(const std::string& name) const;
  const DepVarDecl* findDep(const std::string& name) const;
  int indepSlot(const std::string& name) const;  // 0 when absent

  JetContext& addDep(const std::string& name, int maxOrder = 4);
  JetContext& addFunc(const std::string& name, std::vector<AtomId> args, int maxOrder = 6);
  JetContext& addParam(const std::string& name);
};

}  // namespace jetforge

#endif
