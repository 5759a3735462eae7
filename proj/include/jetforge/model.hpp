#ifndef JETFORGE_MODEL_HPP
#define JETFORGE_MODEL_HPP

#include <optional>

#include "jetforge/rewrite.hpp"

namespace jetforge {

struct UnknownModel : std::runtime_error {
  explicit UnknownModel(const std::string& id) : std::runtime_error("unknown model: " + id) {}
};

struct ModelEquation {
  Expr lhs;          // equation is lhs = 0
  AtomId principal;  // orientation: solve lhs for this atom
};

// One graded block of the infinite symmetry part: the map A |-> gen,
// linear in the FuncDeriv atoms of the declared symbol.
struct SymmetryFamily {
  std::string blockId;   // e.g. "af1", "af0'"
  std::string funcName;  // declared symbol, e.g. "A"
  int grade = 0;
  std::string branch;    // "", "'", "''", ...
  Expr gen;
};

struct FinitePartGen {
  std::string name;
  Expr gen;
};

// Pair of vector fields in base directions (+ optionally lambda).
struct LaxPair {
  VectorField V, W;
};

// Oriented first-order rule for a fibre / shadow variable.
struct DerivRule {
  AtomId lhsAtom;
  Expr rhs;
};

struct EquationModel {
  std::string id;
  std::string anchor;  // one-line description for list/describe
  JetContext ctx;
  std::vector<ModelEquation> equations;
  std::vector<RewriteRule> extraRules;   // constraints and pre-solved orientations
  bool orientFromEquations = true;       // derive rules from `equations`
  std::vector<SymmetryFamily> families;
  std::vector<FinitePartGen> finite;
  std::optional<LaxPair> lax;
  std::vector<DerivRule> covering;       // fibre-variable rules
  std::vector<DerivRule> recursion;      // psi-rules in terms of phi, psi
  std::optional<Expr> invariant;
  std::vector<std::vector<Expr>> metricOverride;  // 4x4 g_{ij}, empty if none

  const SymmetryFamily* family(const std::string& blockId) const;
  RewriteSystem rewrite() const;
};

// Solve lhs = 0 for `principal` (must occur linearly): principal -> rhs.
Expr solveFor(const Expr& lhs, AtomId principal, const JetContext& ctx);

// Gateaux derivative of e at u in the direction of a fresh dependent
// variable `pert` (chains through function symbols with jet arguments).
Expr linearizeExpr(const Expr& e, const std::string& dep, const std::string& pert, const JetContext& ctx);

}  // namespace jetforge

#endif
