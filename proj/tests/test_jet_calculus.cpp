#include "doctest.h"
#include "jetforge/jet_calculus.hpp"

using namespace jetforge;

TEST_SUITE("jet_calculus") {
  TEST_CASE("total derivative shifts jet indices") {
    JetContext ctx = JetContext::standard();
    Expr u = Expr::atom(ctx.u({}));
    Expr u1 = Expr::atom(ctx.u({1})), u2 = Expr::atom(ctx.u({2}));
    Expr u12 = Expr::atom(ctx.u({1, 2}));
    CHECK(totalDerivative(u, 1, ctx) == u1);
    // product rule: D_x(u * u_y) = u_x u_y + u u_xy
    CHECK(totalDerivative(u * u2, 1, ctx) == u1 * u2 + u * u12);
    // base variable: D_x(x * u) = u + x u_x
    Expr x = Expr::atom(ctx.x(1));
    CHECK(totalDerivative(x * u, 1, ctx) == u + x * u1);
  }

  TEST_CASE("total derivatives commute") {
    JetContext ctx = JetContext::standard();
    Expr e = Expr::atom(ctx.u({1})) * Expr::atom(ctx.u({2, 3})) + Expr::atom(ctx.x(4)) * Expr::atom(ctx.u({}));
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j)
        CHECK(totalDerivative(totalDerivative(e, i, ctx), j, ctx) ==
              totalDerivative(totalDerivative(e, j, ctx), i, ctx));
  }

  TEST_CASE("chain rule through function symbols") {
    JetContext ctx = JetContext::standard();
    ctx.addFunc("Q", {ctx.x(4), ctx.u({4})});  // Q(t, u_t)
    Expr Q = Expr::atom(ctx.fd("Q", {}));
    // D_x Q = Q_{u_t} u_{xt}
    CHECK(totalDerivative(Q, 1, ctx) ==
          Expr::atom(ctx.fd("Q", {2})) * Expr::atom(ctx.u({1, 4})));
    // D_t Q = Q_t + Q_{u_t} u_{tt}
    CHECK(totalDerivative(Q, 4, ctx) ==
          Expr::atom(ctx.fd("Q", {1})) + Expr::atom(ctx.fd("Q", {2})) * Expr::atom(ctx.u({4, 4})));
    // argument-aware formal partial
    CHECK(chainPartial(Q, ctx.u({4}), ctx) == Expr::atom(ctx.fd("Q", {2})));
    CHECK(chainPartial(Q, ctx.u({3}), ctx).isZero());
  }

  TEST_CASE("contact field of a generating function") {
    JetContext ctx = JetContext::standard();
    // f = u: scaling u -> e^s u
    VectorField X = contactField(Expr::atom(ctx.u({})), ctx);
    CHECK(X.coeff(ctx.u({})) == Expr::atom(ctx.u({})));
    CHECK(X.coeff(ctx.x(1)).isZero());
    CHECK(X.coeff(ctx.u({1})) == Expr::atom(ctx.u({1})));
    // f = u_x: translation in x
    VectorField T = contactField(Expr::atom(ctx.u({1})), ctx);
    CHECK(T.coeff(ctx.x(1)) == Expr(-1));
    CHECK(T.coeff(ctx.u({})).isZero());
  }

  TEST_CASE("jacobi bracket matches the commutator of contact fields") {
    JetContext ctx = JetContext::standard();
    Expr f = Expr::atom(ctx.u({1})) * Expr::atom(ctx.x(2));
    Expr g = Expr::atom(ctx.u({})) + Expr::atom(ctx.x(1)) * Expr::atom(ctx.u({2}));
    CHECK(jacobiBracket(f, f, ctx).isZero());
    CHECK(jacobiBracket(f, g, ctx) == -jacobiBracket(g, f, ctx));
    // [X_f, X_g] = X_{{f,g}} as derivations on a probe expression
    VectorField Xf = prolong(contactField(f, ctx), 2, ctx);
    VectorField Xg = prolong(contactField(g, ctx), 2, ctx);
    VectorField Xfg = prolong(contactField(jacobiBracket(f, g, ctx), ctx), 2, ctx);
    Expr probe = Expr::atom(ctx.u({1, 2})) + Expr::atom(ctx.u({})) * Expr::atom(ctx.x(3));
    Expr comm = Xf.apply(Xg.apply(probe, ctx), ctx) - Xg.apply(Xf.apply(probe, ctx), ctx);
    CHECK(comm == Xfg.apply(probe, ctx));
  }

  TEST_CASE("poisson bracket on a declared plane") {
    JetContext ctx = JetContext::standard();
    ctx.addFunc("A", {ctx.x(4), ctx.x(3)});
    ctx.addFunc("B", {ctx.x(4), ctx.x(3)});
    Expr br = poissonBracket("A", "B", ctx);
    CHECK(br == Expr::atom(ctx.fd("A", {1})) * Expr::atom(ctx.fd("B", {2})) -
                    Expr::atom(ctx.fd("A", {2})) * Expr::atom(ctx.fd("B", {1})));
  }

  TEST_CASE("multiindex helpers") {
    CHECK(allMultiIndices(4, 2).size() == 10);
    CHECK(allMultiIndices(4, 1).size() == 4);
    CHECK(multisetContains({1, 2, 2, 4}, {2, 4}));
    CHECK(!multisetContains({1, 2}, {2, 2}));
    CHECK(multisetDiff({1, 2, 2, 4}, {2, 4}) == std::vector<int>{1, 2});
  }

  TEST_CASE("jet order cap") {
    JetContext ctx = JetContext::standard();
    std::vector<int> deep(JetContext::kHardOrderCap + 1, 1);
    CHECK_THROWS_AS(ctx.u(deep), OrderOverflow);
  }
}
