#include "doctest.h"
#include "jetforge/geometry.hpp"
#include "jetforge/registry.hpp"

using namespace jetforge;

namespace {

// trace of the Weyl operator blocks: C^{ij}_{ij} contraction
QuadVal weylTrace(const CurvatureValues& cv) {
  QuadVal tr(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          tr = tr + cv.ginv[i][a] * cv.ginv[j][b] * cv.weyl[i][j][a][b];
  return tr;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("symbol metric of the wave equation") {
    MetricExpr g = metricFromSymbol(builtin("wave"));
    Expr c = g.g[0][0];
    CHECK(!c.isZero());
    long sign[4] = {1, -1, -1, -1};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j)
          CHECK(g.g[i][j] == Expr(sign[i]) * c);
        else
          CHECK(g.g[i][j].isZero());
      }
  }

  TEST_CASE("degenerate symbols are rejected") {
    EquationModel m;
    m.id = "degenerate";
    m.ctx = JetContext::standard();
    m.equations.push_back({Expr::atom(m.ctx.u({1, 1})) - Expr::atom(m.ctx.u({2, 2})),
                           m.ctx.u({1, 1})});
    CHECK_THROWS_AS(metricFromSymbol(m), DegenerateSymbol);
  }

  TEST_CASE("recorded two-component metrics match the symbol conformally") {
    const EquationModel& lll = builtin("lll");
    MetricExpr s = metricFromSymbol(lll);
    MetricExpr o = overrideMetric(lll);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(o.g[i][j] == Expr(8) * s.g[i][j]);
  }

  TEST_CASE("flat metric has zero curvature at sampled points") {
    const EquationModel& m = builtin("wave");
    MetricJet mj(metricFromSymbol(m), m.ctx);
    RewriteSystem rw = m.rewrite();
    OnShellPoint pt(rw, 3, 1000);
    CurvatureValues cv = mj.curvatureAt(pt);
    for (auto& a : cv.riem)
      for (auto& b : a)
        for (auto& c : b)
          for (auto& d : c) CHECK(d.isZero());
    CHECK(cv.scalar.isZero());
  }

  TEST_CASE("conformally flat metric: Weyl vanishes, Riemann does not") {
    // g = e^{2 phi} eta with phi = x: encode as (1+x)^2-free rational test
    EquationModel m;
    m.id = "conf";
    m.ctx = JetContext::standard();
    m.equations.push_back({Expr::atom(m.ctx.u({1, 1})), m.ctx.u({1, 1})});
    Expr f = (Expr::atom(m.ctx.x(1)) + 5).pow(2);
    m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
    for (int i = 0; i < 4; ++i) m.metricOverride[i][i] = f;
    MetricJet mj(overrideMetric(m), m.ctx);
    RewriteSystem rw(m.ctx);
    OnShellPoint pt(rw, 11, 1000);
    CurvatureValues cv = mj.curvatureAt(pt);
    bool riemNonZero = false;
    for (auto& a : cv.riem)
      for (auto& b : a)
        for (auto& c : b)
          for (auto& d : c) riemNonZero = riemNonZero || !d.isZero();
    CHECK(riemNonZero);
    for (auto& a : cv.weyl)
      for (auto& b : a)
        for (auto& c : b)
          for (auto& d : c) CHECK(d.isZero());
    AsdReport asd = asdNormAt(cv);
    CHECK(asd.normPlus == 0);
    CHECK(asd.normMinus == 0);
    CHECK(asd.orientation == "both");
  }

  TEST_CASE("curvature identities at a sampled on-shell point") {
    const EquationModel& m = builtin("pb2");
    MetricJet mj(metricFromSymbol(m), m.ctx);
    RewriteSystem rw = m.rewrite();
    OnShellPoint pt(rw, 7, 1000);
    CurvatureValues cv = mj.curvatureAt(pt);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            // pair symmetry and antisymmetries of the lowered Riemann tensor
            CHECK(cv.riem[i][j][k][l] == cv.riem[k][l][i][j]);
            CHECK(cv.riem[i][j][k][l] == -cv.riem[j][i][k][l]);
            // first Bianchi identity
            CHECK((cv.riem[i][j][k][l] + cv.riem[i][k][l][j] + cv.riem[i][l][j][k]).isZero());
          }
    // Weyl is trace-free
    CHECK(weylTrace(cv).isZero());
  }

  TEST_CASE("self-duality verdicts") {
    SelfDualOptions opt;
    opt.trials = 4;
    const EquationModel& lll = builtin("lll");
    SelfDualReport r = checkSelfDual(lll, overrideMetric(lll), opt);
    CHECK(r.result.zero());
    CHECK(r.orientation == "+");
    CHECK(r.points == 4);
    // the non-integrable control has nonzero ASD norm
    const EquationModel& kz = builtin("kz");
    SelfDualOptions nopt = opt;
    nopt.expectNonZero = true;
    SelfDualReport nz = checkSelfDual(kz, metricFromSymbol(kz), nopt);
    CHECK(!nz.result.zero());
    CHECK(nz.nonzeroPoints == nz.points);
  }

  TEST_CASE("Ricci flatness distinguishes the reduced system") {
    SelfDualOptions opt;
    opt.trials = 4;
    const EquationModel& pb2 = builtin("pb2");
    CHECK(checkRicciFlat(pb2, metricFromSymbol(pb2), opt).zero());
    const EquationModel& lll = builtin("lll");
    SelfDualOptions nopt = opt;
    nopt.expectNonZero = true;
    CHECK(!checkRicciFlat(lll, overrideMetric(lll), nopt).zero());
  }

  TEST_CASE("Lax planes are totally null") {
    const EquationModel& m = builtin("dmhe");
    CHECK(checkNullPlanes(m, metricFromSymbol(m), m.lax->V, m.lax->W).zero());
    VectorField Vp = m.lax->V;
    Vp.set(m.ctx.x(1), Vp.coeff(m.ctx.x(1)) + Expr(1));
    CHECK(!checkNullPlanes(m, metricFromSymbol(m), Vp, m.lax->W).zero());
  }
}
