#ifndef JETFORGE_POLY_HPP
#define JETFORGE_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetforge/atom.hpp"

namespace jetforge {

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("symbolic work budget exceeded") {}
};

// Thread-local work budget used by the Auto verification policy. Zero
// max means unlimited. chargeWork throws BudgetExceeded past the limit.
struct WorkBudget {
  static void set(uint64_t maxUnits);
  static void clear();
  static void charge(uint64_t units);
};

class BudgetScope {
 public:
  explicit BudgetScope(uint64_t maxUnits) { WorkBudget::set(maxUnits); }
  ~BudgetScope() { WorkBudget::clear(); }
};

// Monomial: sorted (atom, exponent) pairs, exponents > 0.
struct Mono {
  std::vector<std::pair<AtomId, int>> v;
  int deg() const {
    int d = 0;
    for (auto& p : v) d += p.second;
    return d;
  }
  bool operator==(const Mono& o) const { return v == o.v; }
};

// -1 / 0 / +1, graded then lexicographic in structural atom order.
int monoCmp(const Mono& a, const Mono& b);
Mono monoMul(const Mono& a, const Mono& b);
// a / b if b divides a.
std::optional<Mono> monoDiv(const Mono& a, const Mono& b);
Mono monoGcd(const Mono& a, const Mono& b);
size_t monoHash(const Mono& m);

struct Term {
  Mono m;
  mpq_class c;
};

// Multivariate polynomial over Q; terms sorted descending, no zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  static Poly atom(AtomId a, int exp = 1);
  static Poly fromTerms(std::vector<Term> ts);  // unsorted input ok

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.v.empty()); }
  mpq_class constValue() const;
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  int totalDegree() const;
  int degreeIn(AtomId a) const;
  const Term& leading() const { return terms_.front(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly mulTerm(const Term& t) const;
  Poly mulScalar(const mpq_class& c) const;
  Poly pow(int e) const;
  bool operator==(const Poly& o) const;

  Poly derivative(AtomId a) const;
  void collectAtoms(std::vector<AtomId>& out) const;

  // Coefficients of powers of `a` (index = power), as polys without `a`.
  std::vector<Poly> coeffsIn(AtomId a) const;
  static Poly fromCoeffs(const std::vector<Poly>& cs, AtomId a);

  size_t hash() const;
  std::string toString() const;

 private:
  std::vector<Term> terms_;
};

// Exact division; nullopt if b does not divide a.
std::optional<Poly> polyDivExact(const Poly& a, const Poly& b);
// gcd over Q[...], normalized monic under the term order. gcd(0,0)=0.
Poly polyGcd(const Poly& a, const Poly& b);

}  // namespace jetforge

#endif
