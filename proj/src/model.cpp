#include "jetforge/model.hpp"

namespace jetforge {

const SymmetryFamily* EquationModel::family(const std::string& blockId) const {
  for (auto& f : families)
    if (f.blockId == blockId) return &f;
  return nullptr;
}

Expr solveFor(const Expr& lhs, AtomId principal, const JetContext& ctx) {
  (void)ctx;
  Expr coeff = lhs.diffAtom(principal);
  if (coeff.isZero()) throw std::runtime_error("principal atom absent from equation: " + atomData(principal).key);
  for (AtomId a : coeff.atoms())
    if (a == principal) throw std::runtime_error("equation not linear in its principal atom");
  Expr rest = lhs - coeff * Expr::atom(principal);
  return -rest / coeff;
}

RewriteSystem EquationModel::rewrite() const {
  RewriteSystem sys(ctx);
  if (orientFromEquations)
    for (auto& eq : equations) sys.addRule(eq.principal, solveFor(eq.lhs, eq.principal, ctx));
  for (auto& r : extraRules) sys.addRule(r.principal, r.rhs);
  return sys;
}

static Expr perturbAtom(AtomId a, const std::string& dep, const std::string& pert, const JetContext& ctx) {
  const AtomData& d = atomData(a);
  if (d.kind == AtomKind::JetCoord && d.name == dep) return Expr::atom(ctx.jet(pert, d.index));
  if (d.kind == AtomKind::FuncDeriv) {
    const FuncSymbolDecl* f = ctx.findFunc(d.name);
    if (!f) throw std::runtime_error("undeclared function symbol: " + d.name);
    Expr out;
    for (size_t k = 0; k < f->args.size(); ++k) {
      Expr da = perturbAtom(f->args[k], dep, pert, ctx);
      if (da.isZero()) continue;
      std::vector<int> idx = d.index;
      idx.push_back(static_cast<int>(k) + 1);
      out += Expr::atom(ctx.fd(d.name, std::move(idx))) * da;
    }
    return out;
  }
  return Expr();
}

Expr linearizeExpr(const Expr& e, const std::string& dep, const std::string& pert, const JetContext& ctx) {
  Expr out;
  for (AtomId a : e.atoms()) {
    Expr da = perturbAtom(a, dep, pert, ctx);
    if (da.isZero()) continue;
    Expr pe = e.diffAtom(a);
    if (!pe.isZero()) out += pe * da;
  }
  return out;
}

}  // namespace jetforge
