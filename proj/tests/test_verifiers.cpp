#include "doctest.h"
#include "jetforge/registry.hpp"
#include "jetforge/verifiers.hpp"

using namespace jetforge;

TEST_SUITE("verifiers") {
  TEST_CASE("symmetry check on the linear wave equation") {
    const EquationModel& m = builtin("wave");
    // translations and scaling are symmetries
    CHECK(checkSymmetry(m, Expr::atom(m.ctx.u({1}))).verdict == Verdict::ProvedZero);
    CHECK(checkSymmetry(m, Expr::atom(m.ctx.u({}))).verdict == Verdict::ProvedZero);
    // a generic non-symmetry is rejected
    CHECK(checkSymmetry(m, Expr::atom(m.ctx.u({})) * Expr::atom(m.ctx.u({1}))).verdict ==
          Verdict::ProvedNonZero);
  }

  TEST_CASE("family and bracket structure spot checks") {
    const EquationModel& n = builtin("heavenly-second");
    CHECK(checkFamily(n, *n.family("af1")).verdict == Verdict::ProvedZero);
    // grading: [af1, af1] -> af2
    CHECK(checkAlgebraHom(n, "af1", "af1", "af2").verdict == Verdict::ProvedZero);
    // out-of-range grade must vanish
    CHECK(checkAlgebraHom(n, "af2", "af3", "").verdict == Verdict::ProvedZero);
    // wrong target is caught
    CHECK(checkAlgebraHom(n, "af1", "af1", "af3").verdict != Verdict::ProvedZero);
    // distinct branches commute
    const EquationModel& d = builtin("heavenly-first");
    CHECK(checkAlgebraHom(d, "af0'", "af1''", "").verdict == Verdict::ProvedZero);
  }

  TEST_CASE("invariant annihilation including relative weights") {
    const EquationModel& n = builtin("heavenly-second");
    VerificationResult r = checkInvariant(n, *n.invariant);
    CHECK(r.verdict == Verdict::ProvedZero);
    // a non-invariant function is rejected
    CHECK(checkInvariant(n, Expr::atom(n.ctx.u({1, 1}))).verdict != Verdict::ProvedZero);
  }

  TEST_CASE("Lax pair integrability and perturbation sensitivity") {
    const EquationModel& m = builtin("dmhe");
    LaxReport rep = checkLax(m, m.lax->V, m.lax->W);
    CHECK(rep.frobenius.verdict == Verdict::ProvedZero);
    CHECK(rep.minors > 0);
    VectorField Vp = m.lax->V;
    Vp.set(m.ctx.x(3), Vp.coeff(m.ctx.x(3)) + Expr(1));
    CHECK(!checkLax(m, Vp, m.lax->W).frobenius.zero());
  }

  TEST_CASE("zero curvature for the two-component Lax pairs") {
    for (auto id : {"lll", "genlp"}) {
      const EquationModel& m = builtin(id);
      CHECK(checkZeroCurvature(m, m.lax->V, m.lax->W).zero());
    }
  }

  TEST_CASE("covering and recursion compatibility") {
    const EquationModel& p2 = builtin("p2");
    CHECK(checkCovering(p2, p2.covering).zero());
    const EquationModel& dm = builtin("dmhe");
    RecursionReport rec = checkRecursion(dm, dm.recursion);
    CHECK(rec.result.verdict == Verdict::ProvedZero);
    // breaking one recursion rule is detected
    std::vector<DerivRule> broken = dm.recursion;
    broken[0].rhs = broken[0].rhs + Expr(1);
    CHECK(!checkRecursion(dm, broken).result.zero());
  }

  TEST_CASE("gauge transformation on the deformation branch") {
    const EquationModel& m = builtin("thm3plus-ii");
    CHECK(checkGauge(m, false).verdict == Verdict::ProvedZero);
    CHECK(checkGauge(m, true).verdict == Verdict::ProvedNonZero);
  }

  TEST_CASE("linear symmetry dimensions are seed-stable") {
    CHECK(linearSymDimension(builtin("wave"), 0) == 16);
    CHECK(linearSymDimension(builtin("wave"), 99) == 16);
    CHECK(linearSymDimension(builtin("hussain"), 0) == 12);
  }

  TEST_CASE("rank spot checks") {
    CHECK(rankSpotCheck(builtin("hussain"), 0, 0) == 5);
    CHECK(rankSpotCheck(builtin("hussain"), 1, 0) == 9);
  }

  TEST_CASE("linearization of the wave equation is itself") {
    const EquationModel& m = builtin("wave");
    Expr lin = linearizeModel(m, "phi");
    auto f = [&](std::vector<int> i) { return Expr::atom(m.ctx.jet("phi", std::move(i))); };
    CHECK(lin == f({1, 1}) - f({2, 2}) - f({3, 3}) - f({4, 4}));
  }

  TEST_CASE("combineResults: first nonzero verdict wins") {
    VerificationResult z;
    z.verdict = Verdict::ProvedZero;
    z.method = "symbolic";
    VerificationResult p = z;
    p.verdict = Verdict::ProbablyZero;
    p.method = "probabilistic";
    VerificationResult n = z;
    n.verdict = Verdict::NonZero;
    CHECK(combineResults({{"a", z}, {"b", z}}).verdict == Verdict::ProvedZero);
    // weakest zero verdict survives
    CHECK(combineResults({{"a", z}, {"b", p}}).verdict == Verdict::ProbablyZero);
    CHECK(combineResults({{"a", z}, {"b", n}, {"c", p}}).verdict == Verdict::NonZero);
  }
}
