#ifndef JETFORGE_REWRITE_HPP
#define JETFORGE_REWRITE_HPP

#include <map>
#include <mutex>
#include <set>

#include "jetforge/jet_calculus.hpp"

namespace jetforge {

// Oriented rule: the principal atom and every derivative of it rewrite
// into expressions in the remaining (parametric) coordinates.
struct RewriteRule {
  AtomId principal;
  Expr rhs;
};

class RewriteSystem {
 public:
  explicit RewriteSystem(JetContext ctx)
      : ctx_(std::move(ctx)), mu_(std::make_shared<std::recursive_mutex>()) {}

  void addRule(AtomId principal, Expr rhs);
  const JetContext& ctx() const { return ctx_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  // Does some rule (or a prolongation of one) rewrite this atom?
  bool reducible(AtomId a) const;
  // Fully reduced right-hand side for a reducible atom; prolongations
  // are derived lazily and cached.
  Expr reducedRhs(AtomId a) const;
  // Prolonged right-hand side without normal-form reduction: cheap to
  // build, still exact to evaluate (nested reducible atoms are resolved
  // recursively at evaluation time).
  Expr rawRhs(AtomId a) const;
  // Normal form: no reducible atom survives.
  Expr reduce(const Expr& e) const;

 private:
  const RewriteRule* match(AtomId a) const;
  // Denominator-cleared prolonged equation for a reducible jet atom:
  // polynomial, vanishing on-shell, linear in the atom with coefficient
  // equal to the base rule's denominator.
  Expr clearedEq(AtomId a) const;

  JetContext ctx_;
  std::vector<RewriteRule> rules_;
  std::shared_ptr<std::recursive_mutex> mu_;  // shared so the system stays movable
  mutable std::map<AtomId, Expr> cache_;
  mutable std::map<AtomId, Expr> rawCache_;
  mutable std::map<AtomId, Expr> eqCache_;
  mutable std::set<AtomId> busy_;
};

// Random on-shell point: parametric atoms get pseudo-random rationals
// derived from the seed, principal atoms get the value of their reduced
// right-hand side. Deterministic in (system, seed, bound).
class OnShellPoint {
 public:
  OnShellPoint(const RewriteSystem& sys, uint64_t seed, long bound)
      : sys_(sys), seed_(seed), bound_(bound) {}

  QuadVal value(AtomId a) const;
  QuadVal eval(const Expr& e) const;
  uint64_t seed() const { return seed_; }

 private:
  const RewriteSystem& sys_;
  uint64_t seed_;
  long bound_;
  mutable std::map<AtomId, QuadVal> cache_;
  mutable std::set<AtomId> busy_;
};

uint64_t mixSeed(uint64_t a, uint64_t b);
uint64_t hashKey(const std::string& s);
// nonzero numerator in [-bound, bound], denominator in [1, bound]
mpq_class sampleRational(uint64_t seed, const std::string& key, long bound);

enum class Verdict { ProvedZero, ProvedNonZero, ProbablyZero, NonZero };
enum class VerifyMode { Symbolic, Probabilistic, Auto };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  int trials = 16;
  long bound = 1000;
  uint64_t seed = 0;
  uint64_t budget = 200000;  // monomial units for the symbolic attempt under Auto
  int maxPoleRetries = 64;
  bool parallel = true;
};

struct VerificationResult {
  Verdict verdict = Verdict::NonZero;
  std::string method;    // "symbolic" | "probabilistic"
  int trials = 0;
  long bound = 0;
  long degreeBound = 0;  // Schwartz-Zippel numerator degree bound
  uint64_t seed = 0;
  uint64_t witnessSeed = 0;  // point seed exhibiting a nonzero value
  std::string witness;
  std::string note;

  bool zero() const { return verdict == Verdict::ProvedZero || verdict == Verdict::ProbablyZero; }
  bool proved() const { return verdict == Verdict::ProvedZero || verdict == Verdict::ProvedNonZero; }
};

std::string verdictName(Verdict v);

VerificationResult verifyZero(const Expr& e, const RewriteSystem& sys, const VerifyOptions& opt = {});

}  // namespace jetforge

#endif
