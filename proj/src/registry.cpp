#include "jetforge/registry.hpp"

#include <map>

namespace jetforge {

namespace {

// Expression shorthands bound to one model context.
struct Bld {
  JetContext& c;
  Expr x(int i) const { return Expr::atom(c.x(i)); }
  Expr j(const std::string& d, std::vector<int> idx) const { return Expr::atom(c.jet(d, std::move(idx))); }
  Expr u(std::vector<int> idx) const { return Expr::atom(c.u(std::move(idx))); }
  Expr f(const std::string& n, std::vector<int> idx = {}) const { return Expr::atom(c.fd(n, std::move(idx))); }
  Expr p(const std::string& n) const { return Expr::atom(c.param(n)); }
};

void declPair(JetContext& c, const std::string& name, std::vector<AtomId> args) {
  c.addFunc(name, args, 6);
  c.addFunc(name + "B", args, 6);
}

EquationModel mkWave() {
  EquationModel m;
  m.id = "wave";
  m.anchor = "(O) linear wave equation u_xx - u_yy - u_zz - u_tt = 0";
  m.ctx = JetContext::standard();
  Bld b{m.ctx};
  Expr lhs = b.u({1, 1}) - b.u({2, 2}) - b.u({3, 3}) - b.u({4, 4});
  m.equations.push_back({lhs, m.ctx.u({1, 1})});
  m.invariant = lhs;
  return m;
}

EquationModel mkN() {
  EquationModel m;
  m.id = "heavenly-second";
  m.anchor = "(N) second heavenly equation u_yt - u_xz + u_xx u_yy - u_xy^2 = 0";
  m.ctx = JetContext::standard();
  declPair(m.ctx, "A", {m.ctx.x(4), m.ctx.x(3)});  // A(t,z)
  Bld b{m.ctx};
  Expr lhs = b.u({2, 4}) - b.u({1, 3}) + b.u({1, 1}) * b.u({2, 2}) - b.u({1, 2}).pow(2);
  m.equations.push_back({lhs, m.ctx.u({2, 4})});
  m.invariant = lhs;
  // nabla = x d_t + y d_z on functions of (t,z)
  Expr X = b.x(1), Y = b.x(2);
  Expr n2 = X * X * b.f("A", {1, 1}) + 2 * X * Y * b.f("A", {1, 2}) + Y * Y * b.f("A", {2, 2});
  Expr n3 = X.pow(3) * b.f("A", {1, 1, 1}) + 3 * X * X * Y * b.f("A", {1, 1, 2}) +
            3 * X * Y * Y * b.f("A", {1, 2, 2}) + Y.pow(3) * b.f("A", {2, 2, 2});
  // signs of the degree-0/1 generators chosen so the block map is a graded
  // morphism for the bracket [A_i,B_j] = {A,B}_{i+j}
  m.families.push_back({"af0", "A", 0, "",
                        b.f("A", {2}) * b.u({4}) - b.f("A", {1}) * b.u({3}) +
                            (b.f("A", {1, 2}) * X + b.f("A", {2, 2}) * Y) * b.u({1}) -
                            (b.f("A", {1, 1}) * X + b.f("A", {1, 2}) * Y) * b.u({2}) +
                            Expr(mpq_class(1, 6)) * n3});
  m.families.push_back({"af1", "A", 1, "",
                        b.f("A", {2}) * b.u({1}) - b.f("A", {1}) * b.u({2}) + Expr(mpq_class(1, 2)) * n2});
  m.families.push_back({"af2", "A", 2, "", X * b.f("A", {1}) + Y * b.f("A", {2})});
  m.families.push_back({"af3", "A", 3, "", b.f("A")});
  Expr u0 = b.u({});
  m.finite.push_back({"f0p", 2 * u0 - b.x(1) * b.u({1}) - b.x(2) * b.u({2}) - b.x(3) * b.u({3}) - b.x(4) * b.u({4})});
  m.finite.push_back({"f0pp", 3 * u0 - b.x(1) * b.u({1}) - b.x(2) * b.u({2})});
  m.finite.push_back({"f1", b.x(4) * b.u({1}) + b.x(3) * b.u({2})});
  return m;
}

EquationModel mkD() {
  EquationModel m;
  m.id = "heavenly-first";
  m.anchor = "(D) first heavenly equation u_xt u_yz - u_xz u_yt = 1";
  m.ctx = JetContext::standard();
  declPair(m.ctx, "A", {m.ctx.x(1), m.ctx.x(2)});  // A(x,y)
  declPair(m.ctx, "C", {m.ctx.x(4), m.ctx.x(3)});  // C(t,z)
  Bld b{m.ctx};
  Expr lhs = b.u({1, 4}) * b.u({2, 3}) - b.u({1, 3}) * b.u({2, 4}) - 1;
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  m.invariant = b.u({1, 4}) * b.u({2, 3}) - b.u({1, 3}) * b.u({2, 4});
  // sign of the degree-0 generators chosen so the block maps are graded
  // morphisms for the bracket [A_i,B_j] = {A,B}_{i+j}
  m.families.push_back({"af0'", "A", 0, "'", b.f("A", {2}) * b.u({1}) - b.f("A", {1}) * b.u({2})});
  m.families.push_back({"af1'", "A", 1, "'", b.f("A")});
  m.families.push_back({"af0''", "C", 0, "''", b.f("C", {2}) * b.u({4}) - b.f("C", {1}) * b.u({3})});
  m.families.push_back({"af1''", "C", 1, "''", b.f("C")});
  m.finite.push_back({"f0p", b.x(1) * b.u({1}) - b.x(2) * b.u({2})});
  m.finite.push_back({"f0pp", b.x(4) * b.u({4}) - b.x(3) * b.u({3})});
  m.finite.push_back(
      {"f0ppp", b.x(1) * b.u({1}) + b.x(2) * b.u({2}) - b.x(3) * b.u({3}) - b.x(4) * b.u({4})});
  return m;
}

EquationModel mkIII() {
  EquationModel m;
  m.id = "heavenly-modified";
  m.anchor = "(III) modified heavenly equation u_yt = u_xt u_zz - u_xz u_zt";
  m.ctx = JetContext::standard();
  declPair(m.ctx, "A", {m.ctx.x(1), m.ctx.x(2)});     // A(x,y)
  declPair(m.ctx, "C", {m.ctx.x(4), m.ctx.u({4})});   // C(t,u_t)
  Bld b{m.ctx};
  Expr lhs = b.u({2, 4}) - b.u({1, 4}) * b.u({3, 3}) + b.u({1, 3}) * b.u({3, 4});
  m.equations.push_back({lhs, m.ctx.u({2, 4})});
  m.invariant = lhs / b.u({3, 4});
  Expr Z = b.x(3);
  m.families.push_back({"af0'", "A", 0, "'",
                        b.f("A", {2}) * b.u({1}) - b.f("A", {1}) * b.u({2}) +
                            Expr(mpq_class(1, 2)) * (b.f("A", {2, 2}) * Z * Z -
                                                     2 * b.f("A", {1, 2}) * Z * b.u({3}) +
                                                     b.f("A", {1, 1}) * b.u({3}).pow(2))});
  m.families.push_back({"af1'", "A", 1, "'", b.f("A", {2}) * Z - b.f("A", {1}) * b.u({3})});
  m.families.push_back({"af2'", "A", 2, "'", b.f("A")});
  m.families.push_back({"af0''", "C", 0, "''", b.f("C")});
  m.finite.push_back({"f0p", 2 * b.u({}) - b.x(3) * b.u({3})});
  m.finite.push_back({"f0pp", b.u({}) + b.x(2) * b.u({2})});
  m.finite.push_back({"f0ppp", b.u({2})});
  return m;
}

EquationModel mkII() {
  EquationModel m;
  m.id = "hussain";
  m.anchor = "(II) Hussain's equation u_xt = u_xz u_yt - u_xy u_zt";
  m.ctx = JetContext::standard();
  declPair(m.ctx, "A", {m.ctx.x(2), m.ctx.x(3)});    // A(y,z)
  declPair(m.ctx, "C", {m.ctx.x(1), m.ctx.u({1})});  // C(x,u_x)
  declPair(m.ctx, "E", {m.ctx.x(4), m.ctx.u({4})});  // E(t,u_t)
  Bld b{m.ctx};
  Expr lhs = b.u({1, 4}) - b.u({1, 3}) * b.u({2, 4}) + b.u({1, 2}) * b.u({3, 4});
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  m.invariant = (b.u({1, 3}) * b.u({2, 4}) - b.u({1, 2}) * b.u({3, 4})) / b.u({1, 4});
  m.families.push_back({"af0'", "A", 0, "'", b.f("A", {2}) * b.u({2}) - b.f("A", {1}) * b.u({3})});
  m.families.push_back({"af1'", "A", 1, "'", b.f("A")});
  m.families.push_back({"af0''", "C", 0, "''", b.f("C")});
  m.families.push_back({"af0'''", "E", 0, "'''", b.f("E")});
  m.finite.push_back({"f0", b.u({}) - b.x(2) * b.u({2})});
  return m;
}

EquationModel mkI() {
  EquationModel m;
  m.id = "heavenly-general";
  m.anchor = "(I) general heavenly equation a u_xy u_zt + b u_xz u_yt - (a+b) u_xt u_yz = 0";
  m.ctx = JetContext::standard();
  m.ctx.addParam("alpha").addParam("beta");
  declPair(m.ctx, "A", {m.ctx.x(1), m.ctx.u({1})});
  declPair(m.ctx, "C", {m.ctx.x(2), m.ctx.u({2})});
  declPair(m.ctx, "E", {m.ctx.x(3), m.ctx.u({3})});
  declPair(m.ctx, "G", {m.ctx.x(4), m.ctx.u({4})});
  Bld b{m.ctx};
  Expr al = b.p("alpha"), be = b.p("beta");
  Expr lhs = al * b.u({1, 2}) * b.u({3, 4}) + be * b.u({1, 3}) * b.u({2, 4}) -
             (al + be) * b.u({1, 4}) * b.u({2, 3});
  m.equations.push_back({lhs, m.ctx.u({1, 2})});
  m.invariant = (b.u({1, 2}) * b.u({3, 4}) - b.u({1, 3}) * b.u({2, 4})) /
                (b.u({1, 2}) * b.u({3, 4}) - b.u({1, 4}) * b.u({2, 3}));
  m.families.push_back({"af0'", "A", 0, "'", b.f("A")});
  m.families.push_back({"af0''", "C", 0, "''", b.f("C")});
  m.families.push_back({"af0'''", "E", 0, "'''", b.f("E")});
  m.families.push_back({"af0''''", "G", 0, "''''", b.f("G")});
  m.finite.push_back({"f0", b.u({})});
  return m;
}

EquationModel mkKZ() {
  EquationModel m;
  m.id = "kz";
  m.anchor = "4D Khokhlov-Zabolotskaya equation u_xt - u u_xx - u_x^2 - u_yy + u_zz = 0";
  m.ctx = JetContext::standard();
  Bld b{m.ctx};
  Expr lhs = b.u({1, 4}) - b.u({}) * b.u({1, 1}) - b.u({1}).pow(2) - b.u({2, 2}) + b.u({3, 3});
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  return m;
}

AtomId lam(JetContext& c) {
  if (std::find(c.params.begin(), c.params.end(), "lambda") == c.params.end())
    c.addParam("lambda");
  return c.param("lambda");
}

EquationModel mkDfhe() {
  EquationModel m;
  m.id = "dfhe";
  m.anchor = "deformed first heavenly: u_xt u_yz - u_xz u_yt = q_z u_t - q_t u_z + b(z,t)";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("q", {m.ctx.x(3), m.ctx.x(4)});
  m.ctx.addFunc("b", {m.ctx.x(3), m.ctx.x(4)});
  m.ctx.addDep("phi").addDep("psi");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("q", {1}) * b.u({4}) - b.f("q", {2}) * b.u({3}) + b.f("b");
  Expr lhs = b.u({1, 4}) * b.u({2, 3}) - b.u({1, 3}) * b.u({2, 4}) - Q;
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  Expr lq = Expr::atom(lm) + b.f("q");
  LaxPair L;
  L.V.set(m.ctx.x(1), Q);
  L.V.set(m.ctx.x(3), lq * b.u({1, 4}));
  L.V.set(m.ctx.x(4), -lq * b.u({1, 3}));
  L.W.set(m.ctx.x(2), Q);
  L.W.set(m.ctx.x(3), lq * b.u({2, 4}));
  L.W.set(m.ctx.x(4), -lq * b.u({2, 3}));
  m.lax = L;
  Expr q0 = b.f("q");
  auto ph = [&](int i) { return b.j("phi", {i}); };
  auto ps = [&](int i) { return b.j("psi", {i}); };
  m.recursion.push_back({m.ctx.jet("psi", {1}),
                         (b.u({1, 3}) * (q0 * ps(4) + ph(4)) - b.u({1, 4}) * (q0 * ps(3) + ph(3))) / Q});
  m.recursion.push_back({m.ctx.jet("psi", {2}),
                         (b.u({2, 3}) * (q0 * ps(4) + ph(4)) - b.u({2, 4}) * (q0 * ps(3) + ph(3))) / Q});
  return m;
}

EquationModel mkDmhe() {
  EquationModel m;
  m.id = "dmhe";
  m.anchor = "deformed modified heavenly: u_yt - u_xt u_zz + u_xz u_zt = Q(t,u_t) u_zt";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("Q", {m.ctx.x(4), m.ctx.u({4})});
  m.ctx.addDep("phi").addDep("psi");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("Q");
  Expr lhs = b.u({2, 4}) - b.u({1, 4}) * b.u({3, 3}) + b.u({1, 3}) * b.u({3, 4}) - Q * b.u({3, 4});
  m.equations.push_back({lhs, m.ctx.u({2, 4})});
  LaxPair L;
  L.V.set(m.ctx.x(1), -b.u({3, 4}));
  L.V.set(m.ctx.x(3), b.u({1, 4}));
  L.V.set(m.ctx.x(4), Expr::atom(lm) + Q);
  L.W.set(m.ctx.x(1), -b.u({3, 3}));
  L.W.set(m.ctx.x(2), Expr(1));
  L.W.set(m.ctx.x(3), Expr::atom(lm) + b.u({1, 3}));
  m.lax = L;
  auto ph = [&](int i) { return b.j("phi", {i}); };
  m.recursion.push_back({m.ctx.jet("psi", {3}), b.u({3, 3}) * ph(1) - ph(2) - b.u({1, 3}) * ph(3)});
  m.recursion.push_back({m.ctx.jet("psi", {4}), b.u({3, 4}) * ph(1) - b.u({1, 4}) * ph(3) - Q * ph(4)});
  return m;
}

EquationModel mkDhhe() {
  EquationModel m;
  m.id = "dhhe";
  m.anchor = "deformed Hussain: u_xy u_zt - u_xz u_yt = Q(t,u_t) u_xt";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("Q", {m.ctx.x(4), m.ctx.u({4})});
  m.ctx.addDep("phi").addDep("psi");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("Q");
  Expr L0 = Expr::atom(lm);
  Expr lhs = b.u({1, 2}) * b.u({3, 4}) - b.u({1, 3}) * b.u({2, 4}) - Q * b.u({1, 4});
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  LaxPair L;
  L.V.set(m.ctx.x(1), L0 * b.u({2, 4}));
  L.V.set(m.ctx.x(2), -Q * b.u({1, 4}));
  L.V.set(m.ctx.x(4), -(L0 - Q) * b.u({1, 2}));
  L.W.set(m.ctx.x(1), L0 * b.u({3, 4}));
  L.W.set(m.ctx.x(3), -Q * b.u({1, 4}));
  L.W.set(m.ctx.x(4), -(L0 - Q) * b.u({1, 3}));
  m.lax = L;
  auto ph = [&](int i) { return b.j("phi", {i}); };
  auto ps = [&](int i) { return b.j("psi", {i}); };
  Expr den = Q * b.u({1, 4});
  m.recursion.push_back({m.ctx.jet("psi", {2}),
                         (Q * b.u({1, 2}) * ps(4) + b.u({2, 4}) * ph(1) - b.u({1, 2}) * ph(4)) / den});
  m.recursion.push_back({m.ctx.jet("psi", {3}),
                         (Q * b.u({1, 3}) * ps(4) + b.u({3, 4}) * ph(1) - b.u({1, 3}) * ph(4)) / den});
  return m;
}

EquationModel mkDghe() {
  EquationModel m;
  m.id = "dghe";
  m.anchor = "deformed general heavenly: u_xy u_zt - u_xz u_yt = Q(t,u_t)(u_xy u_zt - u_xt u_yz)";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("Q", {m.ctx.x(4), m.ctx.u({4})});
  m.ctx.addDep("phi").addDep("psi").addDep("r");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("Q");
  Expr L0 = Expr::atom(lm);
  Expr lhs = b.u({1, 2}) * b.u({3, 4}) - b.u({1, 3}) * b.u({2, 4}) -
             Q * (b.u({1, 2}) * b.u({3, 4}) - b.u({1, 4}) * b.u({2, 3}));
  m.equations.push_back({lhs, m.ctx.u({1, 2})});
  LaxPair L;
  L.V.set(m.ctx.x(1), (L0 + 1) * b.u({2, 4}));
  L.V.set(m.ctx.x(2), -Q * b.u({1, 4}));
  L.V.set(m.ctx.x(4), -(L0 + 1 - Q) * b.u({1, 2}));
  L.W.set(m.ctx.x(3), L0 * b.u({2, 4}));
  L.W.set(m.ctx.x(2), -(Q - 1) * b.u({3, 4}));
  L.W.set(m.ctx.x(4), -(L0 + 1 - Q) * b.u({2, 3}));
  m.lax = L;
  auto rr = [&](int i) { return b.j("r", {i}); };
  Expr u24 = b.u({2, 4});
  m.covering.push_back({m.ctx.jet("r", {1}),
                        Q / (L0 + 1) * (b.u({1, 4}) / u24) * rr(2) +
                            (1 - Q / (L0 + 1)) * (b.u({1, 2}) / u24) * rr(4)});
  m.covering.push_back({m.ctx.jet("r", {3}),
                        (Q - 1) / L0 * (b.u({3, 4}) / u24) * rr(2) +
                            (1 - (Q - 1) / L0) * (b.u({2, 3}) / u24) * rr(4)});
  auto ph = [&](int i) { return b.j("phi", {i}); };
  auto ps = [&](int i) { return b.j("psi", {i}); };
  m.recursion.push_back({m.ctx.jet("psi", {1}),
                         Q * (b.u({1, 4}) / u24) * ph(2) - ph(1) - (Q - 1) * (b.u({1, 2}) / u24) * ph(4) +
                             (b.u({1, 2}) / u24) * ps(4)});
  m.recursion.push_back({m.ctx.jet("psi", {3}),
                         (Q - 1) * (b.u({3, 4}) / u24) * ph(2) - (Q - 1) * (b.u({2, 3}) / u24) * ph(4) +
                             (b.u({2, 3}) / u24) * ps(4)});
  return m;
}

EquationModel mkDfheBranch() {
  EquationModel m;
  m.id = "dfhe-branch";
  m.anchor = "first heavenly branch: u_xt u_yz - u_xz u_yt = a(t)(c u_y + q(y)), Lax with lambda d_lambda";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("a", {m.ctx.x(4)});
  m.ctx.addFunc("q", {m.ctx.x(2)});
  m.ctx.addParam("c");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("a") * (b.p("c") * b.u({2}) + b.f("q"));
  Expr lhs = b.u({1, 4}) * b.u({2, 3}) - b.u({1, 3}) * b.u({2, 4}) - Q;
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  Expr DzQ = totalDerivative(Q, 3, m.ctx);
  Expr DtQ = totalDerivative(Q, 4, m.ctx);
  Expr L0 = Expr::atom(lm);
  LaxPair L;
  L.V.set(m.ctx.x(1), -L0);
  L.V.set(m.ctx.x(3), b.u({1, 4}));
  L.V.set(m.ctx.x(4), -b.u({1, 3}));
  L.V.set(lm, (b.u({1, 4}) * DzQ - b.u({1, 3}) * DtQ) / Q * L0);
  L.W.set(m.ctx.x(2), -L0);
  L.W.set(m.ctx.x(3), b.u({2, 4}));
  L.W.set(m.ctx.x(4), -b.u({2, 3}));
  L.W.set(lm, (b.u({2, 4}) * DzQ - b.u({2, 3}) * DtQ) / Q * L0);
  m.lax = L;
  return m;
}

// Polynomial part of a rational expression's numerator (drops the
// denominator; equivalent ideal away from its zero locus).
Expr numerator(const Expr& e) { return Expr::fromRational(e.num(), Poly(mpq_class(1))); }

// Scale a field by the product of its coefficient denominators so all
// coefficients become polynomial. Frobenius integrability of the span is
// unchanged; keeps bracket arithmetic out of rational-gcd territory.
void clearDenominators(VectorField& X) {
  Expr d(1);
  for (auto& [dir, c] : X.coeffs) d = d * Expr::fromRational(c.den(), Poly(mpq_class(1)));
  if (d == Expr(1)) return;
  for (auto& [dir, c] : X.coeffs) c = c * d;
}

// Lax pair shared by all branches of the deformed modified heavenly family.
void attachIIIBranchLax(EquationModel& m, const Expr& Q) {
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr L0 = Expr::atom(lm);
  // lambda coefficients are the full total derivatives D_t Q and D_z Q;
  // the Q_{u_1} terms vanish on the singular branches but not in general
  Expr Qu1 = chainPartial(Q, m.ctx.u({1}), m.ctx);
  Expr Qu2 = chainPartial(Q, m.ctx.u({2}), m.ctx);
  Expr Qu3 = chainPartial(Q, m.ctx.u({3}), m.ctx);
  Expr Qz = chainPartial(Q, m.ctx.x(3), m.ctx);
  LaxPair L;
  L.V.set(m.ctx.x(1), -b.u({3, 4}));
  L.V.set(m.ctx.x(3), b.u({1, 4}));
  L.V.set(m.ctx.x(4), L0);
  L.V.set(lm, (b.u({1, 4}) * Qu1 + b.u({2, 4}) * Qu2 + b.u({3, 4}) * Qu3) * L0);
  L.W.set(m.ctx.x(1), -b.u({3, 3}));
  L.W.set(m.ctx.x(2), Expr(1));
  L.W.set(m.ctx.x(3), L0 + b.u({1, 3}) - Q);
  L.W.set(lm, (Qz + b.u({1, 3}) * Qu1 + b.u({2, 3}) * Qu2 + b.u({3, 3}) * Qu3) * L0);
  clearDenominators(L.V);
  clearDenominators(L.W);
  m.lax = L;
}

Expr iiiLhs(const Bld& b, const Expr& Q) {
  return b.u({2, 4}) - b.u({1, 4}) * b.u({3, 3}) + b.u({1, 3}) * b.u({3, 4}) - Q * b.u({3, 4});
}

EquationModel mkIIIGeneral() {
  EquationModel m;
  m.id = "thm3plus-iii-general";
  m.anchor = "modified heavenly branch with F,G,H,L(x,y) and constraint L_x + (F L)_y = F_yy/2";
  m.ctx = JetContext::standard();
  for (const char* n : {"F", "G", "H", "L"}) m.ctx.addFunc(n, {m.ctx.x(1), m.ctx.x(2)});
  Bld b{m.ctx};
  Expr F = b.f("F"), G = b.f("G"), H = b.f("H"), L = b.f("L"), Z = b.x(3);
  Expr Delta = F * b.u({3}) + G + Z;
  Expr Q = ((b.f("F", {1}) - F * b.f("F", {2})) * b.u({3}).pow(2) +
            2 * (b.f("G", {1}) - G * b.f("F", {2}) - Z * b.f("F", {2})) * b.u({3}) + H) /
               (2 * Delta) +
           Delta * L - (F * b.u({2}) + b.u({1})) / Delta;
  m.equations.push_back({numerator(iiiLhs(b, Q)), m.ctx.u({2, 4})});
  m.extraRules.push_back({m.ctx.fd("L", {1}),
                          Expr(mpq_class(1, 2)) * b.f("F", {2, 2}) - b.f("F", {2}) * L - F * b.f("L", {2})});
  attachIIIBranchLax(m, Q);
  return m;
}

EquationModel mkIIISing(int which) {
  EquationModel m;
  m.id = "thm3plus-iii-sing" + std::to_string(which);
  m.ctx = JetContext::standard();
  Bld b{m.ctx};
  Expr Q;
  if (which == 1) {
    m.anchor = "modified heavenly singular branch Q = u_y/u_z - k(x) u_z";
    m.ctx.addFunc("k", {m.ctx.x(1)});
    Q = b.u({2}) / b.u({3}) - b.f("k") * b.u({3});
  } else if (which == 2) {
    m.anchor = "modified heavenly singular branch Q = z f_y - f_x u_z, f = f(x,y)";
    m.ctx.addFunc("f", {m.ctx.x(1), m.ctx.x(2)});
    Q = b.x(3) * b.f("f", {2}) - b.f("f", {1}) * b.u({3});
  } else {
    m.anchor = "modified heavenly singular branch Q = z f(y)";
    m.ctx.addFunc("f", {m.ctx.x(2)});
    Q = b.x(3) * b.f("f");
  }
  m.equations.push_back({numerator(iiiLhs(b, Q)), m.ctx.u({2, 4})});
  attachIIIBranchLax(m, Q);
  return m;
}

EquationModel mkIIPlus() {
  EquationModel m;
  m.id = "thm3plus-ii";
  m.anchor = "Hussain branch: u_xy u_zt - u_xz u_yt = (f_y u_z - f_z u_y + h) u_xt, f,h of (y,z)";
  m.ctx = JetContext::standard();
  m.ctx.addFunc("f", {m.ctx.x(2), m.ctx.x(3)});
  m.ctx.addFunc("h", {m.ctx.x(2), m.ctx.x(3)});
  m.ctx.addFunc("g", {m.ctx.x(2), m.ctx.x(3)});  // gauge parameter
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr Q = b.f("f", {1}) * b.u({3}) - b.f("f", {2}) * b.u({2}) + b.f("h");
  Expr lhs = b.u({1, 2}) * b.u({3, 4}) - b.u({1, 3}) * b.u({2, 4}) - Q * b.u({1, 4});
  m.equations.push_back({lhs, m.ctx.u({1, 4})});
  Expr L0 = Expr::atom(lm);
  LaxPair L;
  L.V.set(m.ctx.x(1), L0 / (L0 - 1) * b.u({3, 4}));
  L.V.set(m.ctx.x(3), -b.u({1, 4}) / (L0 - 1));
  L.V.set(m.ctx.x(4), -b.u({1, 3}));
  L.V.set(lm, b.f("f", {2}) * b.u({1, 4}) * L0);
  L.W.set(m.ctx.x(1), L0 / (L0 - 1) * b.u({2, 4}));
  L.W.set(m.ctx.x(2), -b.u({1, 4}) / (L0 - 1));
  L.W.set(m.ctx.x(4), -b.u({1, 2}));
  L.W.set(lm, b.f("f", {1}) * b.u({1, 4}) * L0);
  clearDenominators(L.V);
  clearDenominators(L.W);
  m.lax = L;
  return m;
}

EquationModel mkPb2() {
  EquationModel m;
  m.id = "pb2";
  m.anchor = "second Plebanski form u_yt + u_xz + u_xx u_yy - u_xy^2 = 0 with its Lax pair";
  m.ctx = JetContext::standard();
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  Expr lhs = b.u({2, 4}) + b.u({1, 3}) + b.u({1, 1}) * b.u({2, 2}) - b.u({1, 2}).pow(2);
  m.equations.push_back({lhs, m.ctx.u({2, 4})});
  Expr L0 = Expr::atom(lm);
  LaxPair L;
  L.V.set(m.ctx.x(4), Expr(1));
  L.V.set(m.ctx.x(1), L0 - b.u({1, 2}));
  L.V.set(m.ctx.x(2), b.u({1, 1}));
  L.W.set(m.ctx.x(3), Expr(1));
  L.W.set(m.ctx.x(1), b.u({2, 2}));
  L.W.set(m.ctx.x(2), -(L0 + b.u({1, 2})));
  m.lax = L;
  // metric of the two-component system under the reduction v=u_y, w=u_x
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[1][3] = m.metricOverride[3][1] = Expr(1);
  m.metricOverride[0][2] = m.metricOverride[2][0] = Expr(1);
  m.metricOverride[3][3] = -2 * b.u({1, 1});
  m.metricOverride[2][3] = m.metricOverride[3][2] = 2 * b.u({1, 2});
  m.metricOverride[2][2] = -2 * b.u({2, 2});
  return m;
}

EquationModel mkLll() {
  EquationModel m;
  m.id = "lll";
  m.anchor = "two-component second heavenly system on (v,w) with Lax pair and covering";
  m.ctx.indepNames = {"x", "y", "z", "t"};
  m.ctx.addDep("v").addDep("w").addDep("r");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  auto v = [&](std::vector<int> i) { return b.j("v", std::move(i)); };
  auto w = [&](std::vector<int> i) { return b.j("w", std::move(i)); };
  Expr e1 = v({2, 4}) + v({1, 3}) + v({2}) * v({1, 1}) - (v({1}) + w({2})) * v({1, 2}) +
            w({1}) * v({2, 2});
  Expr e2 = w({2, 4}) + w({1, 3}) + v({2}) * w({1, 1}) - (v({1}) + w({2})) * w({1, 2}) +
            w({1}) * w({2, 2});
  m.equations.push_back({e1, m.ctx.jet("v", {2, 4})});
  m.equations.push_back({e2, m.ctx.jet("w", {2, 4})});
  Expr L0 = Expr::atom(lm);
  LaxPair L;
  L.V.set(m.ctx.x(4), Expr(1));
  L.V.set(m.ctx.x(1), L0 - v({1}));
  L.V.set(m.ctx.x(2), w({1}));
  L.W.set(m.ctx.x(3), Expr(1));
  L.W.set(m.ctx.x(1), v({2}));
  L.W.set(m.ctx.x(2), -(L0 + w({2})));
  m.lax = L;
  auto rr = [&](int i) { return b.j("r", {i}); };
  m.covering.push_back({m.ctx.jet("r", {4}), (v({1}) - L0) * rr(1) - w({1}) * rr(2)});
  m.covering.push_back({m.ctx.jet("r", {3}), -v({2}) * rr(1) + (w({2}) + L0) * rr(2)});
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[1][3] = m.metricOverride[3][1] = Expr(1);
  m.metricOverride[0][2] = m.metricOverride[2][0] = Expr(1);
  m.metricOverride[3][3] = -2 * w({1});
  m.metricOverride[2][3] = m.metricOverride[3][2] = v({1}) + w({2});
  m.metricOverride[2][2] = -2 * v({2});
  return m;
}

EquationModel mkP2() {
  EquationModel m;
  m.id = "p2";
  m.anchor = "three-component second heavenly system on (u,v,w) with nonlinear covering";
  m.ctx.indepNames = {"x", "y", "z", "t"};
  m.ctx.addDep("u").addDep("v").addDep("w").addDep("r");
  Bld b{m.ctx};
  auto D = [&](const std::string& n, std::vector<int> i) { return b.j(n, std::move(i)); };
  auto body = [&](const std::string& n) {
    return D(n, {1, 3}) + D(n, {2, 4}) + D("v", {2}) * D(n, {1, 1}) -
           (D("v", {1}) + D("w", {2})) * D(n, {1, 2}) + D("w", {1}) * D(n, {2, 2});
  };
  m.equations.push_back({body("u"), m.ctx.jet("u", {2, 4})});
  m.equations.push_back({body("v") + D("u", {2}), m.ctx.jet("v", {2, 4})});
  m.equations.push_back({body("w") + D("u", {1}), m.ctx.jet("w", {2, 4})});
  auto rr = [&](std::vector<int> i) { return b.j("r", std::move(i)); };
  m.covering.push_back({m.ctx.jet("r", {4}),
                        (D("v", {1}) - rr({})) * rr({1}) - D("w", {1}) * rr({2}) + D("u", {1})});
  m.covering.push_back({m.ctx.jet("r", {3}),
                        -D("v", {2}) * rr({1}) + (D("w", {2}) + rr({})) * rr({2}) - D("u", {2})});
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[1][3] = m.metricOverride[3][1] = Expr(1);
  m.metricOverride[0][2] = m.metricOverride[2][0] = Expr(1);
  m.metricOverride[3][3] = -2 * D("w", {1});
  m.metricOverride[2][3] = m.metricOverride[3][2] = D("v", {1}) + D("w", {2});
  m.metricOverride[2][2] = -2 * D("v", {2});
  return m;
}

EquationModel mkFh2() {
  EquationModel m;
  m.id = "fh2";
  m.anchor = "two-component first heavenly system on (v,w) with Lax pair and covering";
  m.ctx.indepNames = {"x", "y", "z", "t"};
  m.ctx.addDep("v").addDep("w").addDep("r");
  AtomId lm = lam(m.ctx);
  Bld b{m.ctx};
  auto v = [&](std::vector<int> i) { return b.j("v", std::move(i)); };
  auto w = [&](std::vector<int> i) { return b.j("w", std::move(i)); };
  Expr e1 = v({1}) * v({2, 4}) - v({2}) * v({1, 4}) + w({1}) * v({2, 3}) - w({2}) * v({1, 3});
  Expr e2 = v({1}) * w({2, 4}) - v({2}) * w({1, 4}) + w({1}) * w({2, 3}) - w({2}) * w({1, 3});
  m.equations.push_back({e1, m.ctx.jet("v", {2, 4})});
  m.equations.push_back({e2, m.ctx.jet("w", {2, 4})});
  Expr L0 = Expr::atom(lam(m.ctx));
  LaxPair L;
  L.V.set(m.ctx.x(1), L0);
  L.V.set(m.ctx.x(4), v({1}));
  L.V.set(m.ctx.x(3), w({1}));
  L.W.set(m.ctx.x(2), L0);
  L.W.set(m.ctx.x(4), v({2}));
  L.W.set(m.ctx.x(3), w({2}));
  m.lax = L;
  auto rr = [&](int i) { return b.j("r", {i}); };
  m.covering.push_back({m.ctx.jet("r", {1}), -L0 * (v({1}) * rr(4) + w({1}) * rr(3))});
  m.covering.push_back({m.ctx.jet("r", {2}), -L0 * (v({2}) * rr(4) + w({2}) * rr(3))});
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[0][3] = m.metricOverride[3][0] = w({1});
  m.metricOverride[1][3] = m.metricOverride[3][1] = w({2});
  m.metricOverride[0][2] = m.metricOverride[2][0] = -v({1});
  m.metricOverride[1][2] = m.metricOverride[2][1] = -v({2});
  return m;
}

EquationModel mkP3() {
  EquationModel m;
  m.id = "p3";
  m.anchor = "three-component first heavenly system on (u,v,w) with nonlinear covering";
  m.ctx.indepNames = {"x", "y", "z", "t"};
  m.ctx.addDep("u").addDep("v").addDep("w").addDep("r");
  Bld b{m.ctx};
  auto D = [&](const std::string& n, std::vector<int> i) { return b.j(n, std::move(i)); };
  auto body = [&](const std::string& n) {
    return D("w", {1}) * D(n, {2, 3}) - D("v", {2}) * D(n, {1, 4}) + D("v", {1}) * D(n, {2, 4}) -
           D("w", {2}) * D(n, {1, 3});
  };
  m.equations.push_back({body("u"), m.ctx.jet("u", {2, 4})});
  m.equations.push_back({body("v") - D("v", {2}) * D("u", {1}) + D("v", {1}) * D("u", {2}),
                         m.ctx.jet("v", {2, 4})});
  m.equations.push_back({body("w") - D("w", {2}) * D("u", {1}) + D("w", {1}) * D("u", {2}),
                         m.ctx.jet("w", {2, 4})});
  auto rr = [&](std::vector<int> i) { return b.j("r", std::move(i)); };
  Expr r0 = rr({});
  m.covering.push_back({m.ctx.jet("r", {1}),
                        -r0 * (D("v", {1}) * rr({4}) + D("w", {1}) * rr({3}) + r0 * D("u", {1}))});
  m.covering.push_back({m.ctx.jet("r", {2}),
                        -r0 * (D("v", {2}) * rr({4}) + D("w", {2}) * rr({3}) + r0 * D("u", {2}))});
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[0][3] = m.metricOverride[3][0] = D("w", {1});
  m.metricOverride[1][3] = m.metricOverride[3][1] = D("w", {2});
  m.metricOverride[0][2] = m.metricOverride[2][0] = -D("v", {1});
  m.metricOverride[1][2] = m.metricOverride[2][1] = -D("v", {2});
  return m;
}

EquationModel mkGenLP() {
  EquationModel m;
  m.id = "genlp";
  m.anchor = "6x6 commutativity system of the general first-heavenly Lax ansatz";
  m.ctx.indepNames = {"x", "y", "z", "t"};
  for (const char* n : {"a", "b", "c", "d", "q", "r"}) m.ctx.addDep(n);
  AtomId lm = lam(m.ctx);
  Bld bl{m.ctx};
  auto A = [&](std::vector<int> i) { return bl.j("a", std::move(i)); };
  auto B = [&](std::vector<int> i) { return bl.j("b", std::move(i)); };
  auto C = [&](std::vector<int> i) { return bl.j("c", std::move(i)); };
  auto Dd = [&](std::vector<int> i) { return bl.j("d", std::move(i)); };
  auto Qf = [&](std::vector<int> i) { return bl.j("q", std::move(i)); };
  auto R = [&](std::vector<int> i) { return bl.j("r", std::move(i)); };
  Expr a = A({}), b = B({}), c = C({}), d = Dd({}), q = Qf({}), r = R({});
  Expr E1 = a * C({4}) + b * C({3}) - c * A({4}) - d * A({3});
  Expr E2 = a * Dd({4}) + b * Dd({3}) - c * B({4}) - d * B({3});
  Expr E3 = a * q * (Dd({4}) * r + d * R({4})) - c * r * (B({4}) * q + b * Qf({4})) +
            b * q * (Dd({3}) * r + d * R({3})) - d * r * (B({3}) * q + b * Qf({3})) +
            Dd({1}) * r + d * R({1}) - B({2}) * q - b * Qf({2});
  Expr E4 = a * q * (C({4}) * r + c * R({4})) - c * r * (A({4}) * q + a * Qf({4})) +
            b * q * (C({3}) * r + c * R({3})) - d * r * (A({3}) * q + a * Qf({3})) +
            C({1}) * r + c * R({1}) - A({2}) * q - a * Qf({2});
  Expr E5 = a * c * (R({4}) - Qf({4})) + (q + r) * E1 - a * d * Qf({3}) + b * c * R({3}) -
            A({2}) + C({1});
  Expr E6 = a * d * R({4}) - b * c * Qf({4}) + (q + r) * E2 + b * d * (R({3}) - Qf({3})) -
            B({2}) + Dd({1});
  m.equations.push_back({E1, m.ctx.jet("c", {4})});
  m.equations.push_back({E2, m.ctx.jet("d", {4})});
  m.equations.push_back({E3, m.ctx.jet("r", {1})});
  m.equations.push_back({E4, m.ctx.jet("q", {2})});
  m.equations.push_back({E5, m.ctx.jet("a", {2})});
  m.equations.push_back({E6, m.ctx.jet("b", {2})});
  // E3 and E4 share r_x and q_y; orient via the 2x2 solve (det = ad-bc)
  m.orientFromEquations = false;
  m.extraRules.push_back({m.ctx.jet("c", {4}), solveFor(E1, m.ctx.jet("c", {4}), m.ctx)});
  m.extraRules.push_back({m.ctx.jet("d", {4}), solveFor(E2, m.ctx.jet("d", {4}), m.ctx)});
  m.extraRules.push_back({m.ctx.jet("r", {1}), solveFor(a * E3 - b * E4, m.ctx.jet("r", {1}), m.ctx)});
  m.extraRules.push_back({m.ctx.jet("q", {2}), solveFor(c * E3 - d * E4, m.ctx.jet("q", {2}), m.ctx)});
  m.extraRules.push_back({m.ctx.jet("a", {2}), solveFor(E5, m.ctx.jet("a", {2}), m.ctx)});
  m.extraRules.push_back({m.ctx.jet("b", {2}), solveFor(E6, m.ctx.jet("b", {2}), m.ctx)});
  Expr L0 = Expr::atom(lm);
  LaxPair L;
  L.V.set(m.ctx.x(1), Expr(1));
  L.V.set(m.ctx.x(4), (L0 + q) * a);
  L.V.set(m.ctx.x(3), (L0 + q) * b);
  L.W.set(m.ctx.x(2), Expr(1));
  L.W.set(m.ctx.x(4), (L0 + r) * c);
  L.W.set(m.ctx.x(3), (L0 + r) * d);
  m.lax = L;
  m.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
  m.metricOverride[0][3] = m.metricOverride[3][0] = b;
  m.metricOverride[1][3] = m.metricOverride[3][1] = d;
  m.metricOverride[0][1] = m.metricOverride[1][0] = -(q - r) * (a * d - b * c);
  m.metricOverride[0][2] = m.metricOverride[2][0] = -a;
  m.metricOverride[1][2] = m.metricOverride[2][1] = -c;
  return m;
}

const std::map<std::string, EquationModel>& catalog() {
  static const std::map<std::string, EquationModel> cat = [] {
    std::map<std::string, EquationModel> c;
    for (auto mk : {mkWave, mkN, mkD, mkIII, mkII, mkI, mkKZ, mkDfhe, mkDmhe, mkDhhe, mkDghe,
                    mkDfheBranch, mkIIIGeneral, mkIIPlus, mkPb2, mkLll, mkP2, mkFh2, mkP3, mkGenLP}) {
      EquationModel m = mk();
      c.emplace(m.id, std::move(m));
    }
    for (int i = 1; i <= 3; ++i) {
      EquationModel m = mkIIISing(i);
      c.emplace(m.id, std::move(m));
    }
    return c;
  }();
  return cat;
}

}  // namespace

const EquationModel& builtin(const std::string& id) {
  auto& cat = catalog();
  auto it = cat.find(id);
  if (it == cat.end()) throw UnknownModel(id);
  return it->second;
}

std::vector<std::string> builtinIds() {
  std::vector<std::string> ids;
  for (auto& [id, m] : catalog()) ids.push_back(id);
  return ids;
}

Expr renameFunc(const Expr& e, const std::string& from, const std::string& to, const JetContext& ctx) {
  std::map<AtomId, Expr> subs;
  for (AtomId a : e.atoms()) {
    const AtomData& d = atomData(a);
    if (d.kind == AtomKind::FuncDeriv && d.name == from) subs.emplace(a, Expr::atom(ctx.fd(to, d.index)));
  }
  return e.substitute(subs);
}

}  // namespace jetforge
