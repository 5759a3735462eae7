#ifndef JETFORGE_JET_CALCULUS_HPP
#define JETFORGE_JET_CALCULUS_HPP

#include "jetforge/vector_field.hpp"

namespace jetforge {

// Total derivative D_i with the function-symbol chain rule.
Expr totalDerivative(const Expr& e, int slot, const JetContext& ctx);

// Argument-aware formal partial: like diffAtom but FuncDeriv atoms chain
// through declared arguments equal to `dir`.
Expr chainPartial(const Expr& e, AtomId dir, const JetContext& ctx);

// D_i of a single atom, as an Expr.
Expr totalDerivativeAtom(AtomId a, int slot, const JetContext& ctx);

// Contact vector field of a generating function f(x^i, u, u_i):
//   X(x^i) = -f_{u_i},  X(u) = f - sum u_i f_{u_i},  X(u_i) = f_{x^i} + u_i f_u
VectorField contactField(const Expr& f, const JetContext& ctx);

// Prolong a contact field to jets of order <= k.
VectorField prolong(const VectorField& X, int order, const JetContext& ctx);

// Jacobi bracket on generating functions: contactField({f,g}) = [X_f, X_g].
Expr jacobiBracket(const Expr& f, const Expr& g, const JetContext& ctx);

// {A,B} = A_p B_q - A_q B_p for two symbols declared on the same 2-plane.
Expr poissonBracket(const std::string& A, const std::string& B, const JetContext& ctx);

// Multiindex helpers shared with the rewriting layer.
bool multisetContains(const std::vector<int>& big, const std::vector<int>& small);
std::vector<int> multisetDiff(const std::vector<int>& big, const std::vector<int>& small);
std::vector<std::vector<int>> allMultiIndices(int nSlots, int order);  // exactly `order`

}  // namespace jetforge

#endif
