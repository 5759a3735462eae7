#include "jetforge/vector_field.hpp"

#include <algorithm>

#include "jetforge/jet_calculus.hpp"

namespace jetforge {

void VectorField::set(AtomId d, Expr c) {
  if (!hasDir(d)) dirs.push_back(d);
  if (c.isZero())
    coeffs.erase(d);
  else
    coeffs[d] = std::move(c);
}

bool VectorField::hasDir(AtomId d) const { return std::find(dirs.begin(), dirs.end(), d) != dirs.end(); }

Expr VectorField::apply(const Expr& e, const JetContext& ctx) const {
  Expr out;
  for (auto& [d, c] : coeffs) {
    if (c.isZero()) continue;
    const AtomData& ad = atomData(d);
    Expr de;
    if (mode == Mode::Total && ad.kind == AtomKind::IndepVar)
      de = totalDerivative(e, ad.slot, ctx);
    else
      de = chainPartial(e, d, ctx);
    if (!de.isZero()) out += c * de;
  }
  return out;
}

VectorField lieBracket(const VectorField& V, const VectorField& W, const JetContext& ctx) {
  VectorField R;
  R.mode = V.mode;
  R.dirs = V.dirs;
  for (AtomId d : W.dirs)
    if (!R.hasDir(d)) R.dirs.push_back(d);
  for (AtomId d : R.dirs) {
    Expr c = V.apply(W.coeff(d), ctx) - W.apply(V.coeff(d), ctx);
    if (!c.isZero()) R.coeffs[d] = std::move(c);
  }
  return R;
}

}  // namespace jetforge
