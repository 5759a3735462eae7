#include "jetforge/jet_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetforge {

bool multisetContains(const std::vector<int>& big, const std::vector<int>& small) {
  size_t i = 0;
  for (int s : small) {
    while (i < big.size() && big[i] < s) ++i;
    if (i >= big.size() || big[i] != s) return false;
    ++i;
  }
  return true;
}

std::vector<int> multisetDiff(const std::vector<int>& big, const std::vector<int>& small) {
  std::vector<int> out;
  size_t i = 0;
  for (int b : big) {
    if (i < small.size() && small[i] == b) {
      ++i;
      continue;
    }
    out.push_back(b);
  }
  return out;
}

static void enumIdx(int nSlots, int order, int lo, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (order == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = lo; s <= nSlots; ++s) {
    cur.push_back(s);
    enumIdx(nSlots, order - 1, s, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> allMultiIndices(int nSlots, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumIdx(nSlots, order, 1, cur, out);
  return out;
}

Expr totalDerivativeAtom(AtomId a, int slot, const JetContext& ctx) {
  const AtomData& d = atomData(a);
  switch (d.kind) {
    case AtomKind::IndepVar:
      return d.slot == slot ? Expr(1) : Expr();
    case AtomKind::Param:
      return Expr();
    case AtomKind::JetCoord: {
      std::vector<int> idx = d.index;
      idx.push_back(slot);
      return Expr::atom(ctx.jet(d.name, std::move(idx)));
    }
    case AtomKind::FuncDeriv: {
      const FuncSymbolDecl* f = ctx.findFunc(d.name);
      if (!f) throw std::runtime_error("undeclared function symbol: " + d.name);
      Expr out;
      for (size_t k = 0; k < f->args.size(); ++k) {
        Expr darg = totalDerivativeAtom(f->args[k], slot, ctx);
        if (darg.isZero()) continue;
        std::vector<int> idx = d.index;
        idx.push_back(static_cast<int>(k) + 1);
        if (static_cast<int>(idx.size()) > f->maxOrder + 2) throw OrderOverflow{};
        out += Expr::atom(ctx.fd(d.name, std::move(idx))) * darg;
      }
      return out;
    }
  }
  throw std::logic_error("bad atom kind");
}

Expr totalDerivative(const Expr& e, int slot, const JetContext& ctx) {
  Expr out;
  for (AtomId a : e.atoms()) {
    Expr da = totalDerivativeAtom(a, slot, ctx);
    if (da.isZero()) continue;
    Expr pe = e.diffAtom(a);
    if (!pe.isZero()) out += pe * da;
  }
  return out;
}

Expr chainPartial(const Expr& e, AtomId dir, const JetContext& ctx) {
  Expr out = e.diffAtom(dir);
  for (AtomId a : e.atoms()) {
    const AtomData& d = atomData(a);
    if (d.kind != AtomKind::FuncDeriv) continue;
    const FuncSymbolDecl* f = ctx.findFunc(d.name);
    if (!f) throw std::runtime_error("undeclared function symbol: " + d.name);
    for (size_t k = 0; k < f->args.size(); ++k) {
      if (f->args[k] != dir) continue;
      Expr pe = e.diffAtom(a);
      if (pe.isZero()) continue;
      std::vector<int> idx = d.index;
      idx.push_back(static_cast<int>(k) + 1);
      out += pe * Expr::atom(ctx.fd(d.name, std::move(idx)));
    }
  }
  return out;
}

VectorField contactField(const Expr& f, const JetContext& ctx) {
  // reject generating functions touching order >= 2
  for (AtomId a : f.atoms()) {
    const AtomData& d = atomData(a);
    if (d.kind == AtomKind::JetCoord && d.index.size() >= 2)
      throw std::runtime_error("generating function depends on a jet of order >= 2");
  }
  int n = ctx.nIndep();
  VectorField X;
  X.mode = VectorField::Mode::Formal;
  AtomId uA = ctx.u({});
  Expr fu = chainPartial(f, uA, ctx);
  Expr xu = f;
  for (int i = 1; i <= n; ++i) {
    AtomId ui = ctx.u({i});
    Expr fui = chainPartial(f, ui, ctx);
    X.set(ctx.x(i), -fui);
    xu -= Expr::atom(ui) * fui;
    X.set(ui, chainPartial(f, ctx.x(i), ctx) + Expr::atom(ui) * fu);
  }
  X.set(uA, xu);
  return X;
}

VectorField prolong(const VectorField& X, int order, const JetContext& ctx) {
  int n = ctx.nIndep();
  VectorField P = X;
  P.mode = VectorField::Mode::Formal;
  const std::string& dep = ctx.deps.at(0).name;
  for (int m = 2; m <= order; ++m) {
    for (auto& tau : allMultiIndices(n, m)) {
      int i = tau.back();
      std::vector<int> sigma(tau.begin(), tau.end() - 1);
      Expr base = P.coeff(ctx.jet(dep, sigma));
      Expr c = totalDerivative(base, i, ctx);
      for (int j = 1; j <= n; ++j) {
        std::vector<int> sj = sigma;
        sj.push_back(j);
        std::sort(sj.begin(), sj.end());
        Expr dxj = totalDerivative(P.coeff(ctx.x(j)), i, ctx);
        if (!dxj.isZero()) c -= Expr::atom(ctx.jet(dep, std::move(sj))) * dxj;
      }
      P.set(ctx.jet(dep, tau), std::move(c));
    }
  }
  return P;
}

Expr jacobiBracket(const Expr& f, const Expr& g, const JetContext& ctx) {
  VectorField L = lieBracket(contactField(f, ctx), contactField(g, ctx), ctx);
  Expr h = L.coeff(ctx.u({}));
  for (int i = 1; i <= ctx.nIndep(); ++i) h -= Expr::atom(ctx.u({i})) * L.coeff(ctx.x(i));
  return h;
}

Expr poissonBracket(const std::string& A, const std::string& B, const JetContext& ctx) {
  const FuncSymbolDecl* fa = ctx.findFunc(A);
  const FuncSymbolDecl* fb = ctx.findFunc(B);
  if (!fa || !fb) throw std::runtime_error("poissonBracket: undeclared symbol");
  if (fa->args.size() != 2 || fa->args != fb->args)
    throw std::runtime_error("poissonBracket: symbols live on different argument planes");
  Expr Ap = Expr::atom(ctx.fd(A, {1})), Aq = Expr::atom(ctx.fd(A, {2}));
  Expr Bp = Expr::atom(ctx.fd(B, {1})), Bq = Expr::atom(ctx.fd(B, {2}));
  return Ap * Bq - Aq * Bp;
}

}  // namespace jetforge
