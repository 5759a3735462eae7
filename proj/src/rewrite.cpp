#include "jetforge/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jetforge {

void RewriteSystem::addRule(AtomId principal, Expr rhs) {
  const AtomData& d = atomData(principal);
  if (d.kind != AtomKind::JetCoord && d.kind != AtomKind::FuncDeriv)
    throw std::runtime_error("rewrite principal must be a jet coordinate or function derivative");
  for (auto& r : rules_)
    if (r.principal == principal) throw std::runtime_error("duplicate rewrite principal: " + d.key);
  rules_.push_back({principal, std::move(rhs)});
}

const RewriteRule* RewriteSystem::match(AtomId a) const {
  const AtomData& d = atomData(a);
  for (auto& r : rules_) {
    const AtomData& p = atomData(r.principal);
    if (p.kind != d.kind || p.name != d.name) continue;
    if (multisetContains(d.index, p.index)) return &r;
  }
  return nullptr;
}

bool RewriteSystem::reducible(AtomId a) const { return match(a) != nullptr; }

Expr RewriteSystem::reducedRhs(AtomId a) const {
  std::lock_guard<std::recursive_mutex> lock(*mu_);
  auto it = cache_.find(a);
  if (it != cache_.end()) return it->second;
  if (!busy_.insert(a).second) throw std::runtime_error("rewrite cycle through " + atomData(a).key);
  struct Unbusy {
    std::set<AtomId>& s;
    AtomId a;
    ~Unbusy() { s.erase(a); }
  } guard{busy_, a};

  const RewriteRule* r = match(a);
  if (!r) throw std::logic_error("reducedRhs on an irreducible atom");
  const AtomData& d = atomData(a);
  const AtomData& p = atomData(r->principal);
  Expr out;
  if (d.index == p.index) {
    out = reduce(r->rhs);
  } else {
    // peel the largest extra index; the parent stays reducible
    std::vector<int> diff = multisetDiff(d.index, p.index);
    int slot = diff.back();
    std::vector<int> parentIdx = d.index;
    parentIdx.erase(std::find(parentIdx.rbegin(), parentIdx.rend(), slot).base() - 1);
    AtomId parent = d.kind == AtomKind::JetCoord ? ctx_.jet(d.name, std::move(parentIdx))
                                                 : ctx_.fd(d.name, std::move(parentIdx));
    Expr base = reducedRhs(parent);
    if (d.kind == AtomKind::JetCoord) {
      out = reduce(totalDerivative(base, slot, ctx_));
    } else {
      const FuncSymbolDecl* f = ctx_.findFunc(d.name);
      if (!f) throw std::runtime_error("undeclared function symbol: " + d.name);
      out = reduce(chainPartial(base, f->args.at(static_cast<size_t>(slot) - 1), ctx_));
    }
  }
  cache_.emplace(a, out);
  return out;
}

Expr RewriteSystem::rawRhs(AtomId a) const {
  std::lock_guard<std::recursive_mutex> lock(*mu_);
  auto it = rawCache_.find(a);
  if (it != rawCache_.end()) return it->second;

  const RewriteRule* r = match(a);
  if (!r) throw std::logic_error("rawRhs on an irreducible atom");
  const AtomData& d = atomData(a);
  const AtomData& p = atomData(r->principal);
  Expr out;
  if (d.index == p.index) {
    out = r->rhs;
  } else {
    std::vector<int> diff = multisetDiff(d.index, p.index);
    int slot = diff.back();
    std::vector<int> parentIdx = d.index;
    parentIdx.erase(std::find(parentIdx.rbegin(), parentIdx.rend(), slot).base() - 1);
    if (d.kind == AtomKind::JetCoord) {
      // Differentiating a rational rhs repeatedly forces expensive gcd
      // normalizations; prolonging the denominator-cleared equation keeps
      // every intermediate polynomial and solves linearly at the end.
      Expr eq = clearedEq(a);
      Expr c = eq.diffAtom(a);  // the base rule's denominator, free of `a`
      out = (c * Expr::atom(a) - eq) / c;
    } else {
      AtomId parent = ctx_.fd(d.name, std::move(parentIdx));
      Expr base = rawRhs(parent);
      const FuncSymbolDecl* f = ctx_.findFunc(d.name);
      if (!f) throw std::runtime_error("undeclared function symbol: " + d.name);
      out = chainPartial(base, f->args.at(static_cast<size_t>(slot) - 1), ctx_);
    }
  }
  rawCache_.emplace(a, out);
  return out;
}

Expr RewriteSystem::clearedEq(AtomId a) const {
  auto it = eqCache_.find(a);
  if (it != eqCache_.end()) return it->second;
  const RewriteRule* r = match(a);
  if (!r) throw std::logic_error("clearedEq on an irreducible atom");
  const AtomData& d = atomData(a);
  const AtomData& p = atomData(r->principal);
  Expr eq;
  if (d.index == p.index) {
    Expr den = Expr::fromRational(r->rhs.den(), Poly(mpq_class(1)));
    Expr num = Expr::fromRational(r->rhs.num(), Poly(mpq_class(1)));
    eq = den * Expr::atom(a) - num;
  } else {
    std::vector<int> diff = multisetDiff(d.index, p.index);
    int slot = diff.back();
    std::vector<int> parentIdx = d.index;
    parentIdx.erase(std::find(parentIdx.rbegin(), parentIdx.rend(), slot).base() - 1);
    eq = totalDerivative(clearedEq(ctx_.jet(d.name, std::move(parentIdx))), slot, ctx_);
  }
  eqCache_.emplace(a, eq);
  return eq;
}

Expr RewriteSystem::reduce(const Expr& e) const {
  Expr cur = e;
  for (;;) {
    std::map<AtomId, Expr> subs;
    for (AtomId a : cur.atoms())
      if (reducible(a)) subs.emplace(a, reducedRhs(a));
    if (subs.empty()) return cur;
    cur = cur.substitute(subs);
  }
}

static uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hashKey(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t mixSeed(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL)); }

mpq_class sampleRational(uint64_t seed, const std::string& key, long bound) {
  uint64_t base = seed ^ hashKey(key);
  uint64_t h1 = splitmix64(base);
  uint64_t h2 = splitmix64(base + 0x9e3779b97f4a7c15ULL);
  long span = 2 * bound + 1;
  long num = static_cast<long>(h1 % static_cast<uint64_t>(span)) - bound;
  if (num == 0) num = bound;
  long den = static_cast<long>(h2 % static_cast<uint64_t>(bound)) + 1;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

QuadVal OnShellPoint::value(AtomId a) const {
  auto it = cache_.find(a);
  if (it != cache_.end()) return it->second;
  QuadVal v;
  if (sys_.reducible(a)) {
    if (!busy_.insert(a).second) throw std::runtime_error("evaluation cycle through " + atomData(a).key);
    struct Unbusy {
      std::set<AtomId>& s;
      AtomId a;
      ~Unbusy() { s.erase(a); }
    } guard{busy_, a};
    v = eval(sys_.rawRhs(a));
  } else {
    v = QuadVal(sampleRational(seed_, atomData(a).key, bound_));
  }
  cache_.emplace(a, v);
  return v;
}

QuadVal OnShellPoint::eval(const Expr& e) const {
  return e.eval([this](AtomId a) { return value(a); });
}

std::string verdictName(Verdict v) {
  switch (v) {
    case Verdict::ProvedZero: return "proved-zero";
    case Verdict::ProvedNonZero: return "proved-nonzero";
    case Verdict::ProbablyZero: return "probably-zero";
    case Verdict::NonZero: return "nonzero";
  }
  return "?";
}

// Loose Schwartz-Zippel bound: the claim's own degree, inflated by the
// largest degree appearing among the rule right-hand sides it consumes.
static long degreeBoundFor(const Expr& e, const RewriteSystem& sys) {
  long inflate = 1;
  for (AtomId a : e.atoms())
    if (sys.reducible(a)) inflate = std::max(inflate, static_cast<long>(sys.rawRhs(a).totalDegree()));
  return static_cast<long>(e.totalDegree()) * inflate;
}

static VerificationResult runProbabilistic(const Expr& e, const RewriteSystem& sys, const VerifyOptions& opt,
                                           std::string note) {
  VerificationResult res;
  res.method = "probabilistic";
  res.trials = std::max(opt.trials, 16);
  res.bound = std::max(opt.bound, 1000L);
  res.seed = opt.seed;
  res.note = std::move(note);

  // prime the rule cache outside the parallel region (and outside any budget)
  for (AtomId a : e.atoms())
    if (sys.reducible(a)) sys.rawRhs(a);
  res.degreeBound = degreeBoundFor(e, sys);

  std::atomic<bool> foundNonZero{false};
  std::atomic<bool> failed{false};
  uint64_t witnessSeed = 0;
  std::string witness, error;
  std::mutex wm;

  auto trial = [&](int t) {
    if (foundNonZero.load() || failed.load()) return;
    uint64_t trialSeed = mixSeed(opt.seed, static_cast<uint64_t>(t));
    for (int attempt = 0; attempt < opt.maxPoleRetries; ++attempt) {
      uint64_t pointSeed = mixSeed(trialSeed, static_cast<uint64_t>(attempt));
      try {
        OnShellPoint pt(sys, pointSeed, res.bound);
        QuadVal v = pt.eval(e);
        if (!v.isZero()) {
          std::lock_guard<std::mutex> lk(wm);
          if (!foundNonZero.exchange(true)) {
            witnessSeed = pointSeed;
            witness = v.toString();
          }
        }
        return;
      } catch (const PoleAtPoint&) {
        continue;  // resample
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lk(wm);
        if (!failed.exchange(true)) error = ex.what();
        return;
      }
    }
    std::lock_guard<std::mutex> lk(wm);
    if (!failed.exchange(true)) error = "pole retry limit exhausted";
  };

#ifdef _OPENMP
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < res.trials; ++t) trial(t);
  } else {
    for (int t = 0; t < res.trials; ++t) trial(t);
  }
#else
  for (int t = 0; t < res.trials; ++t) trial(t);
#endif

  if (failed.load()) throw std::runtime_error("probabilistic verification failed: " + error);
  if (foundNonZero.load()) {
    res.verdict = Verdict::NonZero;
    res.witnessSeed = witnessSeed;
    res.witness = witness;
  } else {
    res.verdict = Verdict::ProbablyZero;
  }
  return res;
}

VerificationResult verifyZero(const Expr& e, const RewriteSystem& sys, const VerifyOptions& opt) {
  if (opt.mode == VerifyMode::Probabilistic) return runProbabilistic(e, sys, opt, "");

  try {
    Expr r;
    if (opt.mode == VerifyMode::Auto) {
      BudgetScope scope(opt.budget);
      r = sys.reduce(e);
    } else {
      r = sys.reduce(e);
    }
    VerificationResult res;
    res.method = "symbolic";
    res.seed = opt.seed;
    if (r.isZero()) {
      res.verdict = Verdict::ProvedZero;
    } else {
      res.verdict = Verdict::ProvedNonZero;
      res.witness = r.termCount() <= 64 ? r.toString() : "normal form with " + std::to_string(r.termCount()) + " terms";
    }
    return res;
  } catch (const BudgetExceeded&) {
    if (opt.mode == VerifyMode::Symbolic) throw;
    return runProbabilistic(e, sys, opt, "symbolic budget exceeded; fell back to sampling");
  }
}

}  // namespace jetforge
