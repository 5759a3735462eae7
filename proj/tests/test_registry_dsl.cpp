#include <set>

#include "doctest.h"
#include "jetforge/dsl.hpp"
#include "jetforge/registry.hpp"

using namespace jetforge;

TEST_SUITE("registry_dsl") {
  TEST_CASE("registry inventory") {
    auto ids = builtinIds();
    CHECK(ids.size() >= 20);
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    for (auto& id : ids) {
      const EquationModel& m = builtin(id);
      CHECK(m.id == id);
      CHECK(!m.anchor.empty());
      CHECK(!m.equations.empty());
    }
    CHECK_THROWS_AS(builtin("no-such-model"), UnknownModel);
  }

  TEST_CASE("every builtin round-trips through the document language") {
    for (auto& id : builtinIds()) {
      INFO("model " << id);
      std::string doc = printModel(builtin(id));
      EquationModel back = parseModel(doc);
      CHECK(modelEquals(builtin(id), back));
      // printing is idempotent
      CHECK(printModel(back) == doc);
    }
  }

  TEST_CASE("positioned syntax diagnostics") {
    try {
      parseModel("model \"m\" ;\nindep x y ;\ndep u 2 ;\neq: u[1,2] - = 0 ; principal u[1,2] ;\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 4);
      CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
  }

  TEST_CASE("positioned semantic diagnostics") {
    // undeclared dependent variable
    CHECK_THROWS_AS(parseModel("model \"m\" ;\nindep x y ;\ndep u 2 ;\neq: v[1] = 0 ; principal v[1] ;\n"),
                    SemanticError);
    // jet index out of range
    CHECK_THROWS_AS(parseModel("model \"m\" ;\nindep x y ;\ndep u 2 ;\neq: u[3] = 0 ; principal u[3] ;\n"),
                    SemanticError);
  }

  TEST_CASE("a hand-written document reproduces a builtin equation") {
    EquationModel m = parseModel(
        "model \"user-d\" ;\n"
        "anchor \"first heavenly transcription\" ;\n"
        "indep x y z t ;\n"
        "dep u 4 ;\n"
        "eq: u[1,4]*u[2,3] - u[1,3]*u[2,4] = 1 ; principal u[1,4] ;\n");
    CHECK(m.equations.size() == 1);
    CHECK(m.equations[0].lhs == builtin("heavenly-first").equations[0].lhs);
    CHECK(m.equations[0].principal == builtin("heavenly-first").equations[0].principal);
  }

  TEST_CASE("solveFor isolates a linearly occurring atom") {
    JetContext ctx = JetContext::standard();
    Expr x = Expr::atom(ctx.x(1)), y = Expr::atom(ctx.x(2));
    Expr lhs = x * Expr::atom(ctx.u({1, 1})) - y;
    CHECK(solveFor(lhs, ctx.u({1, 1}), ctx) == y / x);
  }

  TEST_CASE("renameFunc rewires every derivative of a symbol") {
    JetContext ctx = JetContext::standard();
    ctx.addFunc("A", {ctx.x(4), ctx.x(3)});
    ctx.addFunc("AB", {ctx.x(4), ctx.x(3)});
    Expr e = Expr::atom(ctx.fd("A", {})) + Expr::atom(ctx.fd("A", {1, 2}));
    Expr r = renameFunc(e, "A", "AB", ctx);
    CHECK(r == Expr::atom(ctx.fd("AB", {})) + Expr::atom(ctx.fd("AB", {1, 2})));
  }

  TEST_CASE("six normal forms carry their structure") {
    CHECK(builtin("wave").families.empty());
    CHECK(builtin("heavenly-second").families.size() == 4);
    CHECK(builtin("heavenly-first").families.size() == 4);
    CHECK(builtin("heavenly-modified").families.size() == 4);
    CHECK(builtin("hussain").families.size() == 4);
    CHECK(builtin("heavenly-general").families.size() == 4);
    for (auto id : {"wave", "heavenly-second", "heavenly-first", "heavenly-modified", "hussain",
                    "heavenly-general"})
      CHECK(builtin(id).invariant.has_value());
    for (auto id : {"dfhe", "dmhe", "dhhe", "dghe", "dfhe-branch", "lll", "genlp"})
      CHECK(builtin(id).lax.has_value());
    CHECK(builtin("genlp").equations.size() == 6);
    CHECK(builtin("lll").equations.size() == 2);
  }
}
