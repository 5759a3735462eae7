#include "jetforge/expr.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

namespace jetforge {

namespace {

struct ExprPtrHash {
  size_t operator()(const std::shared_ptr<const ExprData>& p) const { return p->h; }
};
struct ExprPtrEq {
  bool operator()(const std::shared_ptr<const ExprData>& a, const std::shared_ptr<const ExprData>& b) const {
    return a->h == b->h && a->num == b->num && a->den == b->den;
  }
};

class InternTable {
 public:
  static InternTable& instance() {
    static InternTable t;
    return t;
  }
  std::shared_ptr<const ExprData> intern(Poly num, Poly den) {
    auto d = std::make_shared<ExprData>();
    d->num = std::move(num);
    d->den = std::move(den);
    d->h = d->num.hash() * 31 + d->den.hash();
    {
      std::shared_lock rl(mu_);
      auto it = set_.find(d);
      if (it != set_.end()) return *it;
    }
    std::unique_lock wl(mu_);
    auto [it, ins] = set_.insert(d);
    return *it;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_set<std::shared_ptr<const ExprData>, ExprPtrHash, ExprPtrEq> set_;
};

std::shared_ptr<const ExprData> normalizeIntern(Poly num, Poly den) {
  if (den.isZero()) throw DivisionByZeroExpr{};
  if (num.isZero()) return InternTable::instance().intern(Poly(), Poly(mpq_class(1)));
  if (den.isConstant()) {
    num = num.mulScalar(1 / den.constValue());
    den = Poly(mpq_class(1));
  } else {
    Poly g = polyGcd(num, den);
    if (!g.isConstant()) {
      num = *polyDivExact(num, g);
      den = *polyDivExact(den, g);
    }
    mpq_class lc = den.leading().c;
    if (lc != 1) {
      num = num.mulScalar(1 / lc);
      den = den.mulScalar(1 / lc);
    }
  }
  return InternTable::instance().intern(std::move(num), std::move(den));
}

}  // namespace

Expr::Expr() : p_(normalizeIntern(Poly(), Poly(mpq_class(1)))) {}
Expr::Expr(long n) : p_(normalizeIntern(Poly(mpq_class(n)), Poly(mpq_class(1)))) {}
Expr::Expr(const mpq_class& q) : p_(normalizeIntern(Poly(q), Poly(mpq_class(1)))) {}

Expr Expr::atom(AtomId a) { return Expr(normalizeIntern(Poly::atom(a), Poly(mpq_class(1)))); }

Expr Expr::fromRational(Poly num, Poly den) { return Expr(normalizeIntern(std::move(num), std::move(den))); }

Expr Expr::operator-() const { return Expr(normalizeIntern(-p_->num, p_->den)); }

Expr Expr::operator+(const Expr& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (p_->den == o.p_->den) return fromRational(p_->num + o.p_->num, p_->den);
  return fromRational(p_->num * o.p_->den + o.p_->num * p_->den, p_->den * o.p_->den);
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
  if (isZero() || o.isZero()) return Expr();
  return fromRational(p_->num * o.p_->num, p_->den * o.p_->den);
}

Expr Expr::operator/(const Expr& o) const {
  if (o.isZero()) throw DivisionByZeroExpr{};
  if (isZero()) return Expr();
  return fromRational(p_->num * o.p_->den, p_->den * o.p_->num);
}

Expr Expr::pow(int e) const {
  if (e == 0) return Expr(1);
  if (e < 0) return Expr(1) / pow(-e);
  return fromRational(p_->num.pow(e), p_->den.pow(e));
}

Expr Expr::diffAtom(AtomId a) const {
  const Poly &n = p_->num, &d = p_->den;
  Poly dn = n.derivative(a);
  if (d.isConstant()) return fromRational(std::move(dn), d);
  Poly dd = d.derivative(a);
  if (dd.isZero()) return fromRational(std::move(dn), d);
  return fromRational(dn * d - n * dd, d * d);
}

std::vector<AtomId> Expr::atoms() const {
  std::vector<AtomId> v;
  p_->num.collectAtoms(v);
  p_->den.collectAtoms(v);
  std::sort(v.begin(), v.end(), atomLess);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace {

// Substitute mapped atoms in a polynomial, leaving the rest in place.
Expr substPoly(const Poly& p, const std::map<AtomId, Expr>& rules) {
  bool touched = false;
  for (auto& t : p.terms()) {
    for (auto& [a, e] : t.m.v)
      if (rules.count(a)) {
        touched = true;
        break;
      }
    if (touched) break;
  }
  if (!touched) return Expr::fromRational(p, Poly(mpq_class(1)));
  // group terms by the mapped part of their monomial
  struct Group {
    std::vector<std::pair<AtomId, int>> mapped;
    std::vector<Term> residual;
  };
  std::vector<Group> groups;
  for (auto& t : p.terms()) {
    std::vector<std::pair<AtomId, int>> mapped;
    Term res;
    res.c = t.c;
    for (auto& pr : t.m.v) {
      if (rules.count(pr.first))
        mapped.push_back(pr);
      else
        res.m.v.push_back(pr);
    }
    Group* g = nullptr;
    for (auto& gg : groups)
      if (gg.mapped == mapped) {
        g = &gg;
        break;
      }
    if (!g) {
      groups.push_back({mapped, {}});
      g = &groups.back();
    }
    g->residual.push_back(std::move(res));
  }
  Expr out;
  for (auto& g : groups) {
    Expr factor = Expr::fromRational(Poly::fromTerms(std::move(g.residual)), Poly(mpq_class(1)));
    for (auto& [a, e] : g.mapped) factor = factor * rules.at(a).pow(e);
    out = out + factor;
  }
  return out;
}

}  // namespace

Expr Expr::substitute(const std::map<AtomId, Expr>& rules) const {
  if (rules.empty()) return *this;
  Expr n = substPoly(p_->num, rules);
  if (p_->den.isConstant()) {
    return n / Expr(p_->den.constValue());
  }
  Expr d = substPoly(p_->den, rules);
  return n / d;  // throws DivisionByZeroExpr when the denominator collapses
}

QuadVal Expr::eval(const std::function<QuadVal(AtomId)>& provider) const {
  auto evalPoly = [&](const Poly& p) {
    QuadVal acc(mpq_class(0));
    for (auto& t : p.terms()) {
      QuadVal m(t.c);
      for (auto& [a, e] : t.m.v) {
        QuadVal v = provider(a);
        for (int i = 0; i < e; ++i) m = m * v;
      }
      acc = acc + m;
    }
    return acc;
  };
  QuadVal d = evalPoly(p_->den);
  if (d.isZero()) throw PoleAtPoint{};
  return evalPoly(p_->num) / d;
}

std::string Expr::toString() const {
  if (p_->den.isConstant() && p_->den.constValue() == 1) return p_->num.toString();
  return "(" + p_->num.toString() + ") / (" + p_->den.toString() + ")";
}

}  // namespace jetforge
