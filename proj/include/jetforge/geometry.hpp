#ifndef JETFORGE_GEOMETRY_HPP
#define JETFORGE_GEOMETRY_HPP

#include <array>

#include "jetforge/model.hpp"

namespace jetforge {

struct DegenerateSymbol : std::runtime_error {
  DegenerateSymbol() : std::runtime_error("equation symbol is degenerate") {}
};
struct SingularMetric : std::runtime_error {
  SingularMetric() : std::runtime_error("metric is singular at the sample point") {}
};

// Conformal representative g_{ij} dx^i dx^j over the base coframe
// (dx, dy, dz, dt); entries are Exprs in the model's context.
struct MetricExpr {
  std::array<std::array<Expr, 4>, 4> g;
  std::string provenance;  // "symbol" | "override"
};

// Inverse (adjugate) of the symbol bivector h^{ij} = d lhs / d u_{ij}
// (off-diagonal halved); polynomial entries, conformal representative.
MetricExpr metricFromSymbol(const EquationModel& m);
// The hand-recorded metric attached to the model.
MetricExpr overrideMetric(const EquationModel& m);
// The raw symbol bivector of one equation (for reconstruction tests).
std::array<std::array<Expr, 4>, 4> symbolBivector(const EquationModel& m, size_t eq);

MetricExpr conformalRescale(const MetricExpr& g, const Expr& factor);

// Exact curvature values at one on-shell point.
struct CurvatureValues {
  QuadVal g[4][4];
  QuadVal ginv[4][4];
  QuadVal det;
  QuadVal gamma[4][4][4];  // Gamma^i_{jk}
  QuadVal riem[4][4][4][4];  // lowered R_{ijkl}
  QuadVal ricci[4][4];
  QuadVal scalar;
  QuadVal weyl[4][4][4][4];
};

// First/second total derivatives of the metric entries, computed once so
// repeated point evaluations stay cheap.
class MetricJet {
 public:
  MetricJet(MetricExpr g, const JetContext& ctx);
  const MetricExpr& metric() const { return g_; }
  CurvatureValues curvatureAt(const OnShellPoint& pt) const;

 private:
  MetricExpr g_;
  std::array<std::array<std::array<Expr, 4>, 4>, 4> dg_;
  std::array<std::array<std::array<std::array<Expr, 4>, 4>, 4>, 4> ddg_;
};

// Sum of squares (rational + irrational parts separately) of the entries
// of each chirality block of Weyl as an operator on 2-forms; exact, and
// zero iff the block vanishes.
struct AsdReport {
  mpq_class normPlus;   // block that is ASD for the reference orientation
  mpq_class normMinus;  // same block for the reversed orientation
  mpq_class minNorm;
  std::string orientation;  // "+", "-" (which choice kills the block), "both", "neither"
};
AsdReport asdNormAt(const CurvatureValues& cv);

struct SelfDualOptions {
  int trials = 16;
  long bound = 1000;
  uint64_t seed = 0;
  int maxPoleRetries = 64;
  bool expectNonZero = false;  // negative controls tolerate a stray degenerate sample
};

// asd_norm == 0 at every sampled on-shell point (consistent orientation).
struct SelfDualReport {
  VerificationResult result;
  int points = 0;
  int nonzeroPoints = 0;
  int resamples = 0;
  std::string orientation;  // side that vanished at every clean point
};
SelfDualReport checkSelfDual(const EquationModel& m, const MetricExpr& g,
                             const SelfDualOptions& opt = {});

// Ricci == 0 at every sampled on-shell point.
VerificationResult checkRicciFlat(const EquationModel& m, const MetricExpr& g,
                                  const SelfDualOptions& opt = {});

// g(V,V), g(V,W), g(W,W) vanish on-shell for symbolic lambda.
VerificationResult checkNullPlanes(const EquationModel& m, const MetricExpr& g, const VectorField& V,
                                   const VectorField& W, const VerifyOptions& opt = {});

}  // namespace jetforge

#endif
