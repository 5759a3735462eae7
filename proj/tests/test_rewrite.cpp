#include "doctest.h"
#include "jetforge/jet_calculus.hpp"
#include "jetforge/rewrite.hpp"

using namespace jetforge;

TEST_SUITE("rewrite") {
  TEST_CASE("prolonged reduction of a polynomial rule") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    // u_xx -> u_y
    rw.addRule(ctx.u({1, 1}), Expr::atom(ctx.u({2})));
    CHECK(rw.reducible(ctx.u({1, 1})));
    CHECK(rw.reducible(ctx.u({1, 1, 3})));
    CHECK(!rw.reducible(ctx.u({1, 2})));
    // D_z of the rule: u_xxz -> u_yz
    CHECK(rw.reducedRhs(ctx.u({1, 1, 3})) == Expr::atom(ctx.u({2, 3})));
    // D_x of the rule: u_xxx -> u_xy
    CHECK(rw.reducedRhs(ctx.u({1, 1, 1})) == Expr::atom(ctx.u({1, 2})));
    // reduce eliminates every reducible atom
    Expr e = Expr::atom(ctx.u({1, 1})) * Expr::atom(ctx.u({1, 1, 3}));
    Expr r = rw.reduce(e);
    CHECK(r == Expr::atom(ctx.u({2})) * Expr::atom(ctx.u({2, 3})));
  }

  TEST_CASE("prolonging a rational rule via the cleared equation") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    // u_xy -> u_x / u_y
    Expr u1 = Expr::atom(ctx.u({1})), u2 = Expr::atom(ctx.u({2}));
    rw.addRule(ctx.u({1, 2}), u1 / u2);
    // manual D_x: u_xxy = u_xx/u_y - u_x u_xy / u_y^2, then u_xy reduces again
    Expr u11 = Expr::atom(ctx.u({1, 1}));
    Expr expected = u11 / u2 - u1 * (u1 / u2) / (u2 * u2);
    CHECK(rw.reduce(Expr::atom(ctx.u({1, 1, 2}))) == expected);
    // rawRhs stays exact: evaluating it on-shell agrees with the reduced form
    OnShellPoint pt(rw, 17, 1000);
    CHECK(pt.eval(rw.rawRhs(ctx.u({1, 1, 2}))) == pt.eval(expected));
  }

  TEST_CASE("on-shell points satisfy the equation and are deterministic") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    Expr lhs = Expr::atom(ctx.u({2, 4})) - Expr::atom(ctx.u({1, 3})) +
               Expr::atom(ctx.u({1, 1})) * Expr::atom(ctx.u({2, 2})) -
               Expr::atom(ctx.u({1, 2})).pow(2);
    rw.addRule(ctx.u({2, 4}), Expr::atom(ctx.u({2, 4})) - lhs);
    OnShellPoint a(rw, 5, 1000), b(rw, 5, 1000), c(rw, 6, 1000);
    CHECK(a.eval(lhs).isZero());
    // prolonged equation also vanishes
    CHECK(a.eval(totalDerivative(lhs, 3, ctx)).isZero());
    CHECK(a.value(ctx.u({1, 1})) == b.value(ctx.u({1, 1})));
    CHECK(a.value(ctx.u({1, 1})) != c.value(ctx.u({1, 1})));
  }

  TEST_CASE("sampleRational is deterministic and bounded") {
    mpq_class q1 = sampleRational(9, "k", 50), q2 = sampleRational(9, "k", 50);
    CHECK(q1 == q2);
    CHECK(q1 != 0);
    CHECK(abs(q1.get_num()) <= 50);
    CHECK(q1.get_den() <= 50);
    CHECK(sampleRational(9, "k2", 50) != q1);
  }

  TEST_CASE("verifyZero: symbolic verdicts") {
    JetContext ctx = JetContext::standard();
    RewriteSystem none(ctx);
    Expr x = Expr::atom(ctx.x(1)), y = Expr::atom(ctx.x(2));
    VerificationResult z = verifyZero((x + y).pow(2) - x * x - 2 * x * y - y * y, none);
    CHECK(z.verdict == Verdict::ProvedZero);
    CHECK(z.method == "symbolic");
    VerificationResult nz = verifyZero(x * y + 1, none);
    CHECK(nz.verdict == Verdict::ProvedNonZero);
  }

  TEST_CASE("verifyZero: probabilistic verdicts carry the Schwartz-Zippel log") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    rw.addRule(ctx.u({1, 2}), Expr::atom(ctx.u({1})) * Expr::atom(ctx.u({2})));
    Expr resid = Expr::atom(ctx.u({1, 2})) - Expr::atom(ctx.u({1})) * Expr::atom(ctx.u({2}));
    VerifyOptions opt;
    opt.mode = VerifyMode::Probabilistic;
    opt.seed = 3;
    VerificationResult r = verifyZero(resid, rw, opt);
    CHECK(r.verdict == Verdict::ProbablyZero);
    CHECK(r.method == "probabilistic");
    CHECK(r.trials >= 16);
    CHECK(r.bound >= 1000);
    CHECK(r.degreeBound > 0);
    // a nonzero expression is caught with a witness seed
    VerificationResult nz = verifyZero(resid + 1, rw, opt);
    CHECK(nz.verdict == Verdict::NonZero);
    CHECK(!nz.witness.empty());
    // the witness seed reproduces the nonzero value
    OnShellPoint pt(rw, nz.witnessSeed, nz.bound);
    CHECK(pt.eval(resid + 1).toString() == nz.witness);
  }

  TEST_CASE("auto policy falls back under a tiny budget") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    // a rule whose prolongations blow up symbolically
    Expr dense = Expr(1);
    for (int i = 1; i <= 4; ++i)
      for (int j = i; j <= 4; ++j) dense = dense + Expr::atom(ctx.u({i, j})).pow(2);
    rw.addRule(ctx.u({1, 1, 1, 1}), dense);
    VerifyOptions opt;
    opt.budget = 10;  // force the fallback
    Expr resid = Expr::atom(ctx.u({1, 1, 1, 1})) - dense;
    VerificationResult r = verifyZero(resid, rw, opt);
    CHECK(r.verdict == Verdict::ProbablyZero);
    CHECK(r.method == "probabilistic");
    CHECK(r.note.find("budget") != std::string::npos);
  }

  TEST_CASE("property: random on-shell samples never violate prolonged rules") {
    JetContext ctx = JetContext::standard();
    RewriteSystem rw(ctx);
    rw.addRule(ctx.u({1, 4}), Expr(1) / Expr::atom(ctx.u({2, 3})));
    Expr resid = Expr::atom(ctx.u({1, 4})) * Expr::atom(ctx.u({2, 3})) - 1;
    for (uint64_t s = 0; s < 12; ++s) {
      OnShellPoint pt(rw, s, 100);
      CHECK(pt.eval(resid).isZero());
      CHECK(pt.eval(totalDerivative(resid, 1 + static_cast<int>(s % 4), ctx)).isZero());
    }
  }
}
