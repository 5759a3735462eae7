#include "jetforge/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

namespace jetforge {

namespace {
thread_local uint64_t g_budgetMax = 0;
thread_local uint64_t g_budgetUsed = 0;
}  // namespace

void WorkBudget::set(uint64_t maxUnits) {
  g_budgetMax = maxUnits;
  g_budgetUsed = 0;
}
void WorkBudget::clear() {
  g_budgetMax = 0;
  g_budgetUsed = 0;
}
void WorkBudget::charge(uint64_t units) {
  if (g_budgetMax == 0) return;
  g_budgetUsed += units;
  if (g_budgetUsed > g_budgetMax) throw BudgetExceeded{};
}

int monoCmp(const Mono& a, const Mono& b) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.v.size() && j < b.v.size()) {
    AtomId xa = a.v[i].first, xb = b.v[j].first;
    if (xa != xb) {
      // Structurally smaller atom counts as the "bigger" variable.
      return atomLess(xa, xb) ? 1 : -1;
    }
    if (a.v[i].second != b.v[j].second) return a.v[i].second < b.v[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.v.size()) return 1;
  if (j < b.v.size()) return -1;
  return 0;
}

Mono monoMul(const Mono& a, const Mono& b) {
  Mono r;
  r.v.reserve(a.v.size() + b.v.size());
  size_t i = 0, j = 0;
  while (i < a.v.size() && j < b.v.size()) {
    AtomId xa = a.v[i].first, xb = b.v[j].first;
    if (xa == xb) {
      r.v.emplace_back(xa, a.v[i].second + b.v[j].second);
      ++i;
      ++j;
    } else if (atomLess(xa, xb)) {
      r.v.push_back(a.v[i++]);
    } else {
      r.v.push_back(b.v[j++]);
    }
  }
  while (i < a.v.size()) r.v.push_back(a.v[i++]);
  while (j < b.v.size()) r.v.push_back(b.v[j++]);
  return r;
}

std::optional<Mono> monoDiv(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0;
  for (auto& [xb, eb] : b.v) {
    while (i < a.v.size() && atomLess(a.v[i].first, xb)) r.v.push_back(a.v[i++]);
    if (i >= a.v.size() || a.v[i].first != xb || a.v[i].second < eb) return std::nullopt;
    if (a.v[i].second > eb) r.v.emplace_back(xb, a.v[i].second - eb);
    ++i;
  }
  while (i < a.v.size()) r.v.push_back(a.v[i++]);
  return r;
}

Mono monoGcd(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < a.v.size() && j < b.v.size()) {
    AtomId xa = a.v[i].first, xb = b.v[j].first;
    if (xa == xb) {
      r.v.emplace_back(xa, std::min(a.v[i].second, b.v[j].second));
      ++i;
      ++j;
    } else if (atomLess(xa, xb)) {
      ++i;
    } else {
      ++j;
    }
  }
  return r;
}

size_t monoHash(const Mono& m) {
  size_t h = 1469598103934665603ull;
  for (auto& [a, e] : m.v) {
    h = (h ^ static_cast<size_t>(a)) * 1099511628211ull;
    h = (h ^ static_cast<size_t>(e)) * 1099511628211ull;
  }
  return h;
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) terms_.push_back({Mono{}, c});
}

Poly Poly::atom(AtomId a, int exp) {
  Poly p;
  if (exp == 0) return Poly(mpq_class(1));
  Mono m;
  m.v.emplace_back(a, exp);
  p.terms_.push_back({std::move(m), mpq_class(1)});
  return p;
}

Poly Poly::fromTerms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return monoCmp(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : ts) {
    if (t.c == 0) continue;
    if (!p.terms_.empty() && monoCmp(p.terms_.back().m, t.m) == 0) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

mpq_class Poly::constValue() const {
  if (terms_.empty()) return mpq_class(0);
  if (!isConstant()) throw std::logic_error("constValue on non-constant poly");
  return terms_[0].c;
}

int Poly::totalDegree() const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, t.m.deg());
  return d;
}

int Poly::degreeIn(AtomId a) const {
  int d = 0;
  for (auto& t : terms_)
    for (auto& [x, e] : t.m.v)
      if (x == a) d = std::max(d, e);
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = monoCmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      mpq_class s = terms_[i].c + o.terms_[j].c;
      if (s != 0) r.terms_.push_back({terms_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mulTerm(const Term& t) const {
  if (t.c == 0) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (auto& s : terms_) {
    mpq_class c = s.c * t.c;
    r.terms_.push_back({monoMul(s.m, t.m), std::move(c)});
  }
  // term order is preserved by multiplying with a fixed monomial
  return r;
}

Poly Poly::mulScalar(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (isZero() || o.isZero()) return Poly();
  WorkBudget::charge(terms_.size() * o.terms_.size());
  if (terms_.size() == 1) return o.mulTerm(terms_[0]);
  if (o.terms_.size() == 1) return mulTerm(o.terms_[0]);
  struct MHash {
    size_t operator()(const Mono& m) const { return monoHash(m); }
  };
  std::unordered_map<Mono, mpq_class, MHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 4);
  for (auto& a : terms_)
    for (auto& b : o.terms_) acc[monoMul(a.m, b.m)] += a.c * b.c;
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) ts.push_back({m, c});
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return monoCmp(x.m, y.m) > 0; });
  Poly r;
  r.terms_ = std::move(ts);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::logic_error("Poly::pow negative");
  Poly r(mpq_class(1));
  Poly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = (e >>= 1) ? b * b : b;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || monoCmp(terms_[i].m, o.terms_[i].m) != 0) return false;
  return true;
}

Poly Poly::derivative(AtomId a) const {
  std::vector<Term> ts;
  for (auto& t : terms_) {
    for (size_t k = 0; k < t.m.v.size(); ++k) {
      if (t.m.v[k].first != a) continue;
      Term d;
      d.c = t.c * t.m.v[k].second;
      d.m = t.m;
      if (d.m.v[k].second == 1)
        d.m.v.erase(d.m.v.begin() + static_cast<long>(k));
      else
        d.m.v[k].second -= 1;
      ts.push_back(std::move(d));
      break;
    }
  }
  return fromTerms(std::move(ts));
}

void Poly::collectAtoms(std::vector<AtomId>& out) const {
  for (auto& t : terms_)
    for (auto& [a, e] : t.m.v) out.push_back(a);
}

std::vector<Poly> Poly::coeffsIn(AtomId a) const {
  int d = degreeIn(a);
  std::vector<std::vector<Term>> buckets(static_cast<size_t>(d) + 1);
  for (auto& t : terms_) {
    int e = 0;
    Term s = t;
    for (size_t k = 0; k < s.m.v.size(); ++k) {
      if (s.m.v[k].first == a) {
        e = s.m.v[k].second;
        s.m.v.erase(s.m.v.begin() + static_cast<long>(k));
        break;
      }
    }
    buckets[static_cast<size_t>(e)].push_back(std::move(s));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(fromTerms(std::move(b)));
  return out;
}

Poly Poly::fromCoeffs(const std::vector<Poly>& cs, AtomId a) {
  Poly r;
  for (size_t e = 0; e < cs.size(); ++e) r = r + cs[e] * Poly::atom(a, static_cast<int>(e));
  return r;
}

size_t Poly::hash() const {
  size_t h = 14695981039346656037ull;
  for (auto& t : terms_) {
    h = (h ^ monoHash(t.m)) * 1099511628211ull;
    // hash the rational via its decimal string; cheap enough
    h = (h ^ std::hash<std::string>{}(t.c.get_str())) * 1099511628211ull;
  }
  return h;
}

std::string Poly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool needCoeff = (c != 1) || t.m.v.empty();
    if (needCoeff) os << c.get_str();
    bool needStar = needCoeff;
    for (auto& [a, e] : t.m.v) {
      if (needStar) os << "*";
      os << atomToString(a);
      if (e > 1) os << "^" << e;
      needStar = true;
    }
  }
  return os.str();
}

std::optional<Poly> polyDivExact(const Poly& a, const Poly& b) {
  if (b.isZero()) return std::nullopt;
  if (a.isZero()) return Poly();
  if (b.isConstant()) return a.mulScalar(1 / b.constValue());
  Poly rem = a;
  std::vector<Term> q;
  const Term& lb = b.leading();
  while (!rem.isZero()) {
    WorkBudget::charge(b.size());
    auto md = monoDiv(rem.leading().m, lb.m);
    if (!md) return std::nullopt;
    Term t{*md, rem.leading().c / lb.c};
    rem = rem - b.mulTerm(t);
    q.push_back(std::move(t));
  }
  return Poly::fromTerms(std::move(q));
}

namespace {

// Pseudo-remainder of a by b, both viewed in Q[rest][x].
Poly prem(const Poly& a, const Poly& b, AtomId x) {
  std::vector<Poly> ca = a.coeffsIn(x);
  std::vector<Poly> cb = b.coeffsIn(x);
  int da = static_cast<int>(ca.size()) - 1;
  int db = static_cast<int>(cb.size()) - 1;
  assert(db >= 0 && !cb[static_cast<size_t>(db)].isZero());
  const Poly& lb = cb[static_cast<size_t>(db)];
  Poly r = a;
  int e = da - db + 1;
  while (true) {
    std::vector<Poly> cr = r.coeffsIn(x);
    int dr = static_cast<int>(cr.size()) - 1;
    while (dr >= 0 && cr[static_cast<size_t>(dr)].isZero()) --dr;
    if (dr < db) break;
    // r = lb*r - lc(r)*x^(dr-db)*b
    Poly shifted = b * Poly::atom(x, dr - db) * cr[static_cast<size_t>(dr)];
    r = r * lb - shifted;
    --e;
  }
  if (e > 0) r = r * lb.pow(e);
  return r;
}

Poly contentIn(const Poly& p, AtomId x) {
  Poly g;
  for (auto& c : p.coeffsIn(x)) {
    if (c.isZero()) continue;
    g = polyGcd(g, c);
    if (g.isConstant() && !g.isZero()) return Poly(mpq_class(1));
  }
  return g;
}

Poly makeMonic(Poly p) {
  if (p.isZero()) return p;
  return p.mulScalar(1 / p.leading().c);
}

}  // namespace

Poly polyGcd(const Poly& a0, const Poly& b0) {
  if (a0.isZero()) return makeMonic(b0);
  if (b0.isZero()) return makeMonic(a0);
  if (a0.isConstant() || b0.isConstant()) return Poly(mpq_class(1));
  WorkBudget::charge(a0.size() + b0.size());
  // factor out common monomial content
  Mono ma = a0.terms()[0].m, mb = b0.terms()[0].m;
  for (auto& t : a0.terms()) ma = monoGcd(ma, t.m);
  for (auto& t : b0.terms()) mb = monoGcd(mb, t.m);
  Mono gm = monoGcd(ma, mb);
  Poly a = *polyDivExact(a0, Poly::fromTerms({{ma, mpq_class(1)}}));
  Poly b = *polyDivExact(b0, Poly::fromTerms({{mb, mpq_class(1)}}));
  Poly gmp = Poly::fromTerms({{gm, mpq_class(1)}});
  if (a.isConstant() || b.isConstant()) return makeMonic(gmp);
  if (a == b) return makeMonic(gmp * a);
  // cheap divisibility shortcuts
  if (auto q = polyDivExact(a, b)) {
    (void)q;
    return makeMonic(gmp * b);
  }
  if (auto q = polyDivExact(b, a)) {
    (void)q;
    return makeMonic(gmp * a);
  }
  // pick a main variable common to both, minimizing the larger degree
  std::vector<AtomId> va, vb;
  a.collectAtoms(va);
  b.collectAtoms(vb);
  std::sort(va.begin(), va.end());
  va.erase(std::unique(va.begin(), va.end()), va.end());
  std::sort(vb.begin(), vb.end());
  vb.erase(std::unique(vb.begin(), vb.end()), vb.end());
  AtomId x = -1;
  int best = INT32_MAX;
  for (AtomId v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) continue;
    int d = std::max(a.degreeIn(v), b.degreeIn(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }
  if (x < 0) return makeMonic(gmp);  // disjoint variable sets
  Poly ca = contentIn(a, x), cb = contentIn(b, x);
  Poly gc = polyGcd(ca, cb);
  Poly pa = *polyDivExact(a, ca);
  Poly pb = *polyDivExact(b, cb);
  if (pa.degreeIn(x) < pb.degreeIn(x)) std::swap(pa, pb);
  // subresultant PRS
  Poly g(mpq_class(1)), h(mpq_class(1));
  while (true) {
    int da = pa.degreeIn(x), db = pb.degreeIn(x);
    int delta = da - db;
    Poly r = prem(pa, pb, x);
    if (r.isZero()) break;
    if (r.degreeIn(x) == 0) {
      pb = Poly(mpq_class(1));
      break;
    }
    pa = pb;
    Poly div = g * h.pow(delta);
    auto q = polyDivExact(r, div);
    assert(q);
    pb = *q;
    g = pa.coeffsIn(x).back();
    if (delta > 0) {
      auto hh = polyDivExact(g.pow(delta), h.pow(delta - 1));
      assert(hh);
      h = *hh;
    }
  }
  if (pb.isConstant()) return makeMonic(gmp * gc);
  Poly pp = *polyDivExact(pb, contentIn(pb, x));
  return makeMonic(gmp * gc * pp);
}

}  // namespace jetforge
