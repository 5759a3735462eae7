#ifndef JETFORGE_VECTOR_FIELD_HPP
#define JETFORGE_VECTOR_FIELD_HPP

#include <map>

#include "jetforge/jet_context.hpp"

namespace jetforge {

// Derivation with Expr coefficients over an explicit direction set.
// Mode controls how the field differentiates expressions it is applied
// to: Total uses total derivatives along base directions (Lax fields),
// Formal uses argument-aware formal partials (prolonged symmetry fields).
struct VectorField {
  enum class Mode { Total, Formal };

  std::vector<AtomId> dirs;
  std::map<AtomId, Expr> coeffs;
  Mode mode = Mode::Total;

  Expr coeff(AtomId d) const {
    auto it = coeffs.find(d);
    return it == coeffs.end() ? Expr() : it->second;
  }
  void set(AtomId d, Expr c);
  bool hasDir(AtomId d) const;

  Expr apply(const Expr& e, const JetContext& ctx) const;
};

VectorField lieBracket(const VectorField& V, const VectorField& W, const JetContext& ctx);

}  // namespace jetforge

#endif
