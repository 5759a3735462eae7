#include <random>

#include "doctest.h"
#include "jetforge/expr.hpp"

using namespace jetforge;

namespace {
AtomId P(const char* name) { return AtomTable::instance().param(name); }
}  // namespace

TEST_SUITE("expr_core") {
  TEST_CASE("canonical zero and constants") {
    CHECK(Expr().isZero());
    CHECK((Expr(1) + Expr(-1)).isZero());
    CHECK(Expr(mpq_class(2, 4)) == Expr(mpq_class(1, 2)));
    CHECK(Expr(3).isConstant());
    CHECK(Expr(3).constValue() == 3);
  }

  TEST_CASE("gcd cancellation in the rational normal form") {
    Expr x = Expr::atom(P("tx")), y = Expr::atom(P("ty"));
    CHECK((x * x - y * y) / (x - y) == x + y);
    CHECK((x * y / y) == x);
    Expr e = (x + y).pow(3) / (x + y);
    CHECK(e == (x + y) * (x + y));
  }

  TEST_CASE("hash consing makes structural equality pointer equality") {
    Expr x = Expr::atom(P("tx")), y = Expr::atom(P("ty"));
    Expr a = (x + y) * (x + y);
    Expr b = x * x + 2 * (x * y) + y * y;
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
  }

  TEST_CASE("division by zero throws") {
    Expr x = Expr::atom(P("tx"));
    CHECK_THROWS_AS(x / Expr(), DivisionByZeroExpr);
  }

  TEST_CASE("formal derivative") {
    AtomId ax = P("tx"), ay = P("ty");
    Expr x = Expr::atom(ax), y = Expr::atom(ay);
    CHECK((x.pow(3) * y).diffAtom(ax) == 3 * (x * x * y));
    // quotient rule
    CHECK((x / y).diffAtom(ay) == -x / (y * y));
    CHECK((x / y).diffAtom(ax) == Expr(1) / y);
    CHECK(Expr(5).diffAtom(ax).isZero());
  }

  TEST_CASE("substitution normalizes") {
    AtomId ax = P("tx"), ay = P("ty");
    Expr x = Expr::atom(ax), y = Expr::atom(ay);
    Expr e = (x * x).substitute({{ax, y + 1}});
    CHECK(e == y * y + 2 * y + 1);
    // simultaneous, capture-free
    Expr swapped = (x - y).substitute({{ax, y}, {ay, x}});
    CHECK(swapped == y - x);
  }

  TEST_CASE("atoms are sorted and unique") {
    AtomId ax = P("tx"), ay = P("ty");
    Expr e = Expr::atom(ay) * Expr::atom(ax) + Expr::atom(ax);
    auto as = e.atoms();
    REQUIRE(as.size() == 2);
    CHECK(as[0] != as[1]);
  }

  TEST_CASE("property: difference of squares at random rationals") {
    std::mt19937_64 rng(42);
    AtomId ax = P("tx");
    Expr x = Expr::atom(ax);
    for (int i = 0; i < 50; ++i) {
      long a = static_cast<long>(rng() % 2001) - 1000;
      long b = static_cast<long>(rng() % 2001) - 1000;
      Expr lhs = (Expr(a) + b * x) * (Expr(a) - b * x);
      Expr rhs = Expr(a * a) - Expr(b * b) * x * x;
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("evaluation agrees with direct arithmetic") {
    AtomId ax = P("tx"), ay = P("ty");
    Expr e = (Expr::atom(ax) + 2) / (Expr::atom(ay) - 1);
    auto provider = [&](AtomId a) -> QuadVal {
      return a == ax ? QuadVal(mpq_class(1, 3)) : QuadVal(mpq_class(5, 2));
    };
    CHECK(e.eval(provider) == QuadVal(mpq_class(7, 3) / mpq_class(3, 2)));
    // pole detection
    auto atPole = [&](AtomId a) -> QuadVal { return a == ax ? QuadVal(0) : QuadVal(1); };
    CHECK_THROWS_AS(e.eval(atPole), PoleAtPoint);
  }

  TEST_CASE("quadratic extension values") {
    QuadVal r5 = QuadVal::sqrtD(5);
    CHECK(r5 * r5 == QuadVal(5));
    CHECK(!r5.isRational());
    // perfect squares collapse to the positive rational root
    CHECK(QuadVal::sqrtD(mpq_class(9, 4)) == QuadVal(mpq_class(3, 2)));
    QuadVal v(1, 1, 2);  // 1 + sqrt(2)
    CHECK(v * v.inverse() == QuadVal(1));
    CHECK_THROWS_AS(QuadVal(0).inverse(), ArithmeticError);
    mpq_class root;
    CHECK(rationalSqrt(mpq_class(49, 16), root));
    CHECK(root == mpq_class(7, 4));
    CHECK(!rationalSqrt(mpq_class(2), root));
  }

  TEST_CASE("polynomial layer: exact division and gcd") {
    Poly x = Poly::atom(P("tx")), y = Poly::atom(P("ty"));
    Poly a = (x + y) * (x - y);
    CHECK(polyDivExact(a, x + y).has_value());
    CHECK(*polyDivExact(a, x + y) == x - y);
    CHECK(!polyDivExact(x * x + Poly(mpq_class(1)), x + y).has_value());
    Poly g = polyGcd((x + y) * x, (x + y) * y);
    CHECK(polyDivExact(x + y, g).has_value());
    CHECK(polyDivExact(g, x + y).has_value());
  }

  TEST_CASE("coefficient extraction round trip") {
    AtomId ax = P("tx");
    Poly x = Poly::atom(ax), y = Poly::atom(P("ty"));
    Poly p = x * x * y + x.mulScalar(3) + y * y;
    auto cs = p.coeffsIn(ax);
    REQUIRE(cs.size() == 3);
    CHECK(cs[2] == y);
    CHECK(Poly::fromCoeffs(cs, ax) == p);
  }
}
