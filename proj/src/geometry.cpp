#include "jetforge/geometry.hpp"

#include <string>

#include "jetforge/jet_calculus.hpp"
#include "jetforge/verifiers.hpp"

namespace jetforge {

namespace {

template <typename T>
using Mat4 = std::array<std::array<T, 4>, 4>;

template <typename T>
T det3At(const Mat4<T>& m, const int r[3], const int c[3]) {
  return m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]]) -
         m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]]) +
         m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]]);
}

template <typename T>
T cofactor(const Mat4<T>& m, int i, int j) {
  int r[3], c[3];
  for (int k = 0, p = 0; k < 4; ++k)
    if (k != i) r[p++] = k;
  for (int k = 0, p = 0; k < 4; ++k)
    if (k != j) c[p++] = k;
  T d = det3At(m, r, c);
  return ((i + j) % 2 == 0) ? d : -d;
}

template <typename T>
T det4(const Mat4<T>& m) {
  T d{};
  for (int j = 0; j < 4; ++j) d = d + m[0][j] * cofactor(m, 0, j);
  return d;
}

// adj[i][j] = cofactor(j, i); for symmetric input the adjugate is symmetric.
template <typename T>
Mat4<T> adjugate(const Mat4<T>& m) {
  Mat4<T> a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = cofactor(m, j, i);
  return a;
}

int epsSign(int i, int j, int k, int l) {
  int p[4] = {i, j, k, l};
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (p[a] == p[b]) return 0;
      if (p[a] > p[b]) sign = -sign;
    }
  return sign;
}

// Index pairs enumerating the 6-dimensional space of 2-forms.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

mpq_class entryNormSq(const QuadVal& v) {
  return v.rat() * v.rat() + v.irr() * v.irr();
}

}  // namespace

std::array<std::array<Expr, 4>, 4> symbolBivector(const EquationModel& m, size_t eq) {
  const ModelEquation& me = m.equations.at(eq);
  const std::string dep = atomData(me.principal).name;
  Mat4<Expr> h{};
  const mpq_class half(1, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      AtomId a = m.ctx.jet(dep, {i + 1, j + 1});
      Expr c = chainPartial(me.lhs, a, m.ctx);
      if (i == j)
        h[i][i] = c;
      else
        h[i][j] = h[j][i] = Expr(half) * c;
    }
  return h;
}

MetricExpr metricFromSymbol(const EquationModel& m) {
  Mat4<Expr> h = symbolBivector(m, 0);
  if (det4(h).isZero()) throw DegenerateSymbol();
  MetricExpr g;
  g.g = adjugate(h);
  g.provenance = "symbol";
  return g;
}

MetricExpr overrideMetric(const EquationModel& m) {
  if (m.metricOverride.empty())
    throw std::runtime_error("model " + m.id + " carries no metric override");
  MetricExpr g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g.g[i][j] = m.metricOverride[i][j];
  g.provenance = "override";
  return g;
}

MetricExpr conformalRescale(const MetricExpr& g, const Expr& factor) {
  if (factor.isZero()) throw DivisionByZeroExpr();
  MetricExpr out;
  out.provenance = g.provenance;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.g[i][j] = factor * g.g[i][j];
  return out;
}

MetricJet::MetricJet(MetricExpr g, const JetContext& ctx) : g_(std::move(g)) {
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        dg_[k][i][j] = dg_[k][j][i] = totalDerivative(g_.g[i][j], k + 1, ctx);
  for (int l = 0; l < 4; ++l)
    for (int k = l; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          Expr d = totalDerivative(dg_[k][i][j], l + 1, ctx);
          ddg_[l][k][i][j] = ddg_[l][k][j][i] = d;
          ddg_[k][l][i][j] = ddg_[k][l][j][i] = d;
        }
}

CurvatureValues MetricJet::curvatureAt(const OnShellPoint& pt) const {
  CurvatureValues cv;
  Mat4<QuadVal> gv{};
  QuadVal dgv[4][4][4];
  QuadVal ddgv[4][4][4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      gv[i][j] = pt.eval(g_.g[i][j]);
      for (int k = 0; k < 4; ++k) {
        dgv[k][i][j] = pt.eval(dg_[k][i][j]);
        for (int l = 0; l < 4; ++l) ddgv[l][k][i][j] = pt.eval(ddg_[l][k][i][j]);
      }
    }

  cv.det = det4(gv);
  if (cv.det.isZero()) throw SingularMetric();
  Mat4<QuadVal> adj = adjugate(gv);
  Mat4<QuadVal> ginv{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ginv[i][j] = adj[i][j] / cv.det;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cv.g[i][j] = gv[i][j];
      cv.ginv[i][j] = ginv[i][j];
    }

  const QuadVal half(mpq_class(1, 2));

  // T_{l|jk} = d_j g_{lk} + d_k g_{lj} - d_l g_{jk}
  auto T = [&](int l, int j, int k) { return dgv[j][l][k] + dgv[k][l][j] - dgv[l][j][k]; };
  // d_m T_{l|jk}
  auto dT = [&](int m, int l, int j, int k) {
    return ddgv[m][j][l][k] + ddgv[m][k][l][j] - ddgv[m][l][j][k];
  };

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        QuadVal s;
        for (int l = 0; l < 4; ++l) s = s + ginv[i][l] * T(l, j, k);
        cv.gamma[i][j][k] = half * s;
      }

  // d_m g^{il} = -g^{ia} (d_m g_{ab}) g^{bl}
  QuadVal dginv[4][4][4];
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l) {
        QuadVal s;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) s = s + ginv[i][a] * dgv[m][a][b] * ginv[b][l];
        dginv[m][i][l] = -s;
      }

  QuadVal dgamma[4][4][4][4];  // d_m Gamma^i_{jk}
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          QuadVal s;
          for (int l = 0; l < 4; ++l)
            s = s + dginv[m][i][l] * T(l, j, k) + ginv[i][l] * dT(m, l, j, k);
          dgamma[m][i][j][k] = half * s;
        }

  // R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^i_{ka} Gamma^a_{lj}
  //                                                  - Gamma^i_{la} Gamma^a_{kj}
  QuadVal rup[4][4][4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          QuadVal s = dgamma[k][i][l][j] - dgamma[l][i][k][j];
          for (int a = 0; a < 4; ++a)
            s = s + cv.gamma[i][k][a] * cv.gamma[a][l][j] - cv.gamma[i][l][a] * cv.gamma[a][k][j];
          rup[i][j][k][l] = s;
        }

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          QuadVal s;
          for (int a = 0; a < 4; ++a) s = s + gv[i][a] * rup[a][j][k][l];
          cv.riem[i][j][k][l] = s;
        }

  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      QuadVal s;
      for (int i = 0; i < 4; ++i) s = s + rup[i][j][i][l];
      cv.ricci[j][l] = s;
    }

  {
    QuadVal s;
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) s = s + ginv[j][l] * cv.ricci[j][l];
    cv.scalar = s;
  }

  const QuadVal sixth(mpq_class(1, 6));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          QuadVal c = cv.riem[i][j][k][l] -
                      half * (gv[i][k] * cv.ricci[j][l] - gv[i][l] * cv.ricci[j][k] -
                              gv[j][k] * cv.ricci[i][l] + gv[j][l] * cv.ricci[i][k]) +
                      sixth * cv.scalar * (gv[i][k] * gv[j][l] - gv[i][l] * gv[j][k]);
          cv.weyl[i][j][k][l] = c;
        }

  return cv;
}

AsdReport asdNormAt(const CurvatureValues& cv) {
  if (!cv.det.isRational())
    throw ArithmeticError("metric determinant left the rational field");
  QuadVal sdet = QuadVal::sqrtD(cv.det.rat());

  // Hodge star on 2-forms: (*F)_{ij} = sqrt(det) sum_{k<l} eps_{ijkl} F^{kl}.
  QuadVal S[6][6];
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      int i = kPairs[p][0], j = kPairs[p][1];
      int a = kPairs[q][0], b = kPairs[q][1];
      QuadVal s;
      for (int u = 0; u < 6; ++u) {
        int k = kPairs[u][0], l = kPairs[u][1];
        int e = epsSign(i, j, k, l);
        if (e == 0) continue;
        QuadVal t = cv.ginv[k][a] * cv.ginv[l][b] - cv.ginv[k][b] * cv.ginv[l][a];
        s = (e > 0) ? s + t : s - t;
      }
      S[p][q] = sdet * s;
    }

  // Weyl as an operator on 2-forms: (W F)_{ij} = sum_{k<l} C_{ij}^{  kl} F_{kl}.
  QuadVal W[6][6];
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      int i = kPairs[p][0], j = kPairs[p][1];
      int k = kPairs[q][0], l = kPairs[q][1];
      QuadVal s;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          s = s + cv.weyl[i][j][a][b] * cv.ginv[a][k] * cv.ginv[b][l];
      W[p][q] = s;
    }

  const QuadVal half(mpq_class(1, 2));
  QuadVal Pp[6][6], Pm[6][6];
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      QuadVal idq = (p == q) ? QuadVal(1) : QuadVal(0);
      Pp[p][q] = half * (idq + S[p][q]);
      Pm[p][q] = half * (idq - S[p][q]);
    }

  auto blockNorm = [&](QuadVal (&P)[6][6]) {
    QuadVal PW[6][6];
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) {
        QuadVal s;
        for (int r = 0; r < 6; ++r) s = s + P[p][r] * W[r][q];
        PW[p][q] = s;
      }
    mpq_class n = 0;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) {
        QuadVal s;
        for (int r = 0; r < 6; ++r) s = s + PW[p][r] * P[r][q];
        n += entryNormSq(s);
      }
    return n;
  };

  AsdReport rep;
  rep.normPlus = blockNorm(Pp);
  rep.normMinus = blockNorm(Pm);
  rep.minNorm = rep.normPlus < rep.normMinus ? rep.normPlus : rep.normMinus;
  bool zp = rep.normPlus == 0, zm = rep.normMinus == 0;
  rep.orientation = zp ? (zm ? "both" : "+") : (zm ? "-" : "neither");
  return rep;
}

namespace {

// Shared sampling loop: evaluate `probe` at random on-shell points,
// resampling past poles / singular metrics, Indeterminate when the bad
// samples outnumber the good ones.
template <typename Probe>
void samplePoints(const EquationModel& m, const MetricJet& mj, const SelfDualOptions& opt,
                  int& resamples, const Probe& probe) {
  RewriteSystem rw = m.rewrite();
  int bad = 0, good = 0;
  for (int t = 0; t < opt.trials; ++t) {
    bool done = false;
    for (int att = 0; att < opt.maxPoleRetries && !done; ++att) {
      uint64_t ps = mixSeed(mixSeed(opt.seed, 0x73643031ULL), mixSeed(uint64_t(t), uint64_t(att)));
      try {
        OnShellPoint pt(rw, ps, opt.bound);
        CurvatureValues cv = mj.curvatureAt(pt);
        probe(ps, cv);
        ++good;
        done = true;
      } catch (const PoleAtPoint&) {
        ++bad;
        ++resamples;
      } catch (const SingularMetric&) {
        ++bad;
        ++resamples;
      }
    }
    if (!done) throw Indeterminate("model " + m.id + ": every resample hit a pole or singular metric");
  }
  if (bad > good) throw Indeterminate("model " + m.id + ": over half the curvature samples degenerated");
}

}  // namespace

SelfDualReport checkSelfDual(const EquationModel& m, const MetricExpr& g, const SelfDualOptions& opt) {
  SelfDualReport rep;
  rep.result.method = "probabilistic";
  rep.result.trials = opt.trials;
  rep.result.bound = opt.bound;
  rep.result.seed = opt.seed;
  rep.result.verdict = Verdict::ProbablyZero;

  MetricJet mj(g, m.ctx);
  // Which Weyl half vanishes can flip with the sampled jet: det(symbol) is a
  // perfect square P^2 and the positive-root Hodge star changes sign with P,
  // i.e. the orientation is resolved per solution. A point passes when the
  // block of its better orientation vanishes; the tag records consistency.
  bool plusOk = true, minusOk = true;
  samplePoints(m, mj, opt, rep.resamples, [&](uint64_t ps, const CurvatureValues& cv) {
    AsdReport a = asdNormAt(cv);
    ++rep.points;
    if (a.minNorm != 0) {
      ++rep.nonzeroPoints;
      if (rep.result.verdict != Verdict::NonZero) {
        rep.result.verdict = Verdict::NonZero;
        rep.result.witnessSeed = ps;
        rep.result.witness = a.minNorm.get_str();
      }
      return;
    }
    if (a.normPlus != 0) plusOk = false;
    if (a.normMinus != 0) minusOk = false;
  });

  if (rep.result.verdict == Verdict::NonZero) {
    rep.orientation = "neither";
    rep.result.note = "asd norm nonzero at " + std::to_string(rep.nonzeroPoints) + " of " +
                      std::to_string(rep.points) + " points";
    return rep;
  }
  rep.orientation = plusOk ? (minusOk ? "both" : "+") : (minusOk ? "-" : "mixed");
  rep.result.note = "asd norm zero at all " + std::to_string(rep.points) +
                    " points, orientation " + rep.orientation;
  return rep;
}

VerificationResult checkRicciFlat(const EquationModel& m, const MetricExpr& g, const SelfDualOptions& opt) {
  VerificationResult res;
  res.method = "probabilistic";
  res.trials = opt.trials;
  res.bound = opt.bound;
  res.seed = opt.seed;
  res.verdict = Verdict::ProbablyZero;

  MetricJet mj(g, m.ctx);
  int points = 0, resamples = 0;
  samplePoints(m, mj, opt, resamples, [&](uint64_t ps, const CurvatureValues& cv) {
    ++points;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!cv.ricci[i][j].isZero() && res.verdict != Verdict::NonZero) {
          res.verdict = Verdict::NonZero;
          res.witnessSeed = ps;
          res.witness = "Ricci[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                        cv.ricci[i][j].toString();
        }
  });
  res.note = "Ricci checked at " + std::to_string(points) + " points";
  return res;
}

VerificationResult checkNullPlanes(const EquationModel& m, const MetricExpr& g, const VectorField& V,
                                   const VectorField& W, const VerifyOptions& opt) {
  RewriteSystem rw = m.rewrite();
  Expr vv, vw, ww;
  for (int i = 0; i < 4; ++i) {
    Expr vi = V.coeff(m.ctx.x(i + 1));
    Expr wi = W.coeff(m.ctx.x(i + 1));
    for (int j = 0; j < 4; ++j) {
      Expr vj = V.coeff(m.ctx.x(j + 1));
      Expr wj = W.coeff(m.ctx.x(j + 1));
      vv += g.g[i][j] * vi * vj;
      vw += g.g[i][j] * vi * wj;
      ww += g.g[i][j] * wi * wj;
    }
  }
  std::vector<std::pair<std::string, VerificationResult>> parts;
  parts.emplace_back("g(V,V)", verifyZero(vv, rw, opt));
  parts.emplace_back("g(V,W)", verifyZero(vw, rw, opt));
  parts.emplace_back("g(W,W)", verifyZero(ww, rw, opt));
  return combineResults(parts);
}

}  // namespace jetforge
