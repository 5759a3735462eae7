#include "jetforge/dsl.hpp"

#include <cctype>
#include <sstream>

namespace jetforge {

namespace {

struct Tok {
  enum Kind { Ident, Int, Str, Punct, End } kind;
  std::string text;  // ident / digits / string body
  char c = 0;        // punct char
  int line = 1, col = 1;
};

std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](char ch) {
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') bump(src[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      bump(ch);
      ++i;
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Tok::Ident;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        bump(src[i++]);
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Tok::Int;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        bump(src[i++]);
      }
    } else if (ch == '"') {
      t.kind = Tok::Str;
      bump(src[i++]);
      while (i < src.size() && src[i] != '"') {
        t.text += src[i];
        bump(src[i++]);
      }
      if (i >= src.size()) throw SyntaxError(t.line, t.col, "unterminated string");
      bump(src[i++]);
    } else if (std::string("()[]{},;:=+-*/^").find(ch) != std::string::npos) {
      t.kind = Tok::Punct;
      t.c = ch;
      bump(src[i++]);
    } else {
      throw SyntaxError(line, col, std::string("unexpected character '") + ch + "'");
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  EquationModel run() {
    while (!atEnd()) statement();
    finishLax();
    return std::move(m_);
  }

 private:
  std::vector<Tok> toks_;
  size_t i_ = 0;
  EquationModel m_;
  std::vector<std::pair<std::string, VectorField>> fields_;

  const Tok& cur() const { return toks_[i_]; }
  bool atEnd() const { return cur().kind == Tok::End; }
  const Tok& advance() { return toks_[i_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Tok& t = cur();
    std::string got = t.kind == Tok::End      ? "end of input"
                      : t.kind == Tok::Punct ? std::string("'") + t.c + "'"
                                             : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, "expected " + expected + ", got " + got);
  }
  [[noreturn]] void bad(const Tok& t, const std::string& what) const {
    throw SemanticError(t.line, t.col, what);
  }

  bool isPunct(char c) const { return cur().kind == Tok::Punct && cur().c == c; }
  void expectPunct(char c) {
    if (!isPunct(c)) fail(std::string("'") + c + "'");
    advance();
  }
  std::string expectIdent(const std::string& what) {
    if (cur().kind != Tok::Ident) fail(what);
    return advance().text;
  }
  std::string expectStr(const std::string& what) {
    if (cur().kind != Tok::Str) fail(what);
    return advance().text;
  }
  long expectInt(const std::string& what) {
    bool neg = false;
    if (isPunct('-')) {
      advance();
      neg = true;
    }
    if (cur().kind != Tok::Int) fail(what);
    long v = std::stol(advance().text);
    return neg ? -v : v;
  }

  std::vector<int> indexList(char close) {
    std::vector<int> idx;
    while (!isPunct(close)) {
      idx.push_back(static_cast<int>(expectInt("index")));
      if (isPunct(','))
        advance();
      else
        break;
    }
    expectPunct(close);
    return idx;
  }

  // atom reference: ident, ident[1,4] (jet) or ident{1} (function partial)
  AtomId atomRef() {
    Tok t = cur();
    std::string name = expectIdent("atom");
    try {
      if (isPunct('[')) {
        advance();
        std::vector<int> idx = indexList(']');
        if (!m_.ctx.findDep(name)) bad(t, "undeclared dependent variable " + name);
        for (int s : idx)
          if (s < 1 || s > m_.ctx.nIndep()) bad(t, "index slot out of range in " + name);
        return m_.ctx.jet(name, std::move(idx));
      }
      if (isPunct('{')) {
        advance();
        std::vector<int> idx = indexList('}');
        if (!m_.ctx.findFunc(name)) bad(t, "undeclared function symbol " + name);
        return m_.ctx.fd(name, std::move(idx));
      }
      if (int slot = m_.ctx.indepSlot(name)) return m_.ctx.x(slot);
      for (auto& p : m_.ctx.params)
        if (p == name) return m_.ctx.param(name);
      if (m_.ctx.findDep(name)) return m_.ctx.jet(name, {});
      if (m_.ctx.findFunc(name)) return m_.ctx.fd(name, {});
    } catch (const SemanticError&) {
      throw;
    } catch (const OrderOverflow&) {
      bad(t, "jet order exceeds the declared bound for " + name);
    } catch (const std::exception& e) {
      bad(t, e.what());
    }
    bad(t, "undeclared name " + name);
  }

  Expr primary() {
    if (isPunct('(')) {
      advance();
      Expr e = expr();
      expectPunct(')');
      return e;
    }
    if (cur().kind == Tok::Int) return Expr(mpq_class(advance().text));
    if (cur().kind == Tok::Ident) return Expr::atom(atomRef());
    fail("expression");
  }
  Expr power() {
    Expr e = primary();
    if (isPunct('^')) {
      advance();
      long n = expectInt("exponent");
      e = e.pow(static_cast<int>(n));
    }
    return e;
  }
  Expr factor() {
    if (isPunct('-')) {
      advance();
      return -factor();
    }
    return power();
  }
  Expr term() {
    Expr e = factor();
    while (isPunct('*') || isPunct('/')) {
      char op = advance().c;
      Expr r = factor();
      if (op == '*')
        e = e * r;
      else {
        if (r.isZero()) fail("nonzero divisor");
        e = e / r;
      }
    }
    return e;
  }
  Expr expr() {
    Expr e = term();
    while (isPunct('+') || isPunct('-')) {
      char op = advance().c;
      Expr r = term();
      e = op == '+' ? e + r : e - r;
    }
    return e;
  }

  void statement() {
    Tok t = cur();
    std::string kw = expectIdent("statement keyword");
    if (kw == "model") {
      m_.id = expectStr("model id string");
    } else if (kw == "anchor") {
      m_.anchor = expectStr("anchor string");
    } else if (kw == "indep") {
      while (cur().kind == Tok::Ident) m_.ctx.indepNames.push_back(advance().text);
      if (m_.ctx.indepNames.empty()) fail("independent variable names");
    } else if (kw == "dep") {
      std::string name = expectIdent("dependent variable name");
      int order = static_cast<int>(expectInt("order"));
      if (order < 0 || order > JetContext::kHardOrderCap) bad(t, "order out of range");
      m_.ctx.addDep(name, order);
    } else if (kw == "param") {
      while (cur().kind == Tok::Ident) m_.ctx.addParam(advance().text);
    } else if (kw == "fn") {
      std::string name = expectIdent("function symbol name");
      expectPunct('(');
      std::vector<AtomId> args;
      while (!isPunct(')')) {
        args.push_back(atomRef());
        if (isPunct(','))
          advance();
        else
          break;
      }
      expectPunct(')');
      int order = 6;
      if (cur().kind == Tok::Ident && cur().text == "order") {
        advance();
        order = static_cast<int>(expectInt("order"));
      }
      m_.ctx.addFunc(name, std::move(args), order);
      if (cur().kind == Tok::Ident && cur().text == "constraint") {
        advance();
        Tok ct = cur();
        AtomId lhs = atomRef();
        if (atomData(lhs).kind != AtomKind::FuncDeriv || atomData(lhs).name != name)
          bad(ct, "constraint must orient a partial of " + name);
        expectPunct('=');
        m_.extraRules.push_back({lhs, expr()});
      }
    } else if (kw == "eq") {
      expectPunct(':');
      Expr lhs = expr();
      expectPunct('=');
      Expr rhs = expr();
      expectPunct(';');
      if (!(cur().kind == Tok::Ident && cur().text == "principal")) fail("'principal'");
      advance();
      Tok pt = cur();
      AtomId principal = atomRef();
      Expr full = lhs - rhs;
      if (full.diffAtom(principal).isZero())
        bad(pt, "principal atom does not occur in the equation");
      m_.equations.push_back({full, principal});
    } else if (kw == "noautoorient") {
      m_.orientFromEquations = false;
    } else if (kw == "rule") {
      expectPunct(':');
      AtomId lhs = atomRef();
      expectPunct('=');
      m_.extraRules.push_back({lhs, expr()});
    } else if (kw == "field") {
      std::string name = expectIdent("field name");
      expectPunct(':');
      VectorField f;
      for (;;) {
        expectPunct('(');
        Expr c = expr();
        expectPunct(')');
        if (!(cur().kind == Tok::Ident && cur().text == "d")) fail("'d'");
        advance();
        Tok dt = cur();
        std::string dir = expectIdent("direction name");
        AtomId da;
        if (int slot = m_.ctx.indepSlot(dir))
          da = m_.ctx.x(slot);
        else {
          bool isParam = false;
          for (auto& p : m_.ctx.params) isParam = isParam || p == dir;
          if (!isParam) bad(dt, "direction must be a base variable or parameter");
          da = m_.ctx.param(dir);
        }
        f.set(da, c);
        if (isPunct('+'))
          advance();
        else
          break;
      }
      fields_.emplace_back(name, std::move(f));
    } else if (kw == "cover" || kw == "recur") {
      expectPunct(':');
      AtomId lhs = atomRef();
      expectPunct('=');
      DerivRule r{lhs, expr()};
      (kw == "cover" ? m_.covering : m_.recursion).push_back(std::move(r));
    } else if (kw == "invariant") {
      expectPunct(':');
      m_.invariant = expr();
    } else if (kw == "metric") {
      long r = expectInt("row"), c = expectInt("column");
      if (r < 1 || r > 4 || c < 1 || c > 4) bad(t, "metric indices must be 1..4");
      expectPunct(':');
      if (m_.metricOverride.empty()) m_.metricOverride.assign(4, std::vector<Expr>(4, Expr()));
      Expr e = expr();
      m_.metricOverride[r - 1][c - 1] = e;
      m_.metricOverride[c - 1][r - 1] = e;
    } else if (kw == "family") {
      SymmetryFamily fam;
      fam.blockId = expectStr("block id string");
      fam.funcName = expectIdent("function symbol name");
      fam.grade = static_cast<int>(expectInt("grade"));
      fam.branch = expectStr("branch string");
      expectPunct(':');
      if (!m_.ctx.findFunc(fam.funcName)) bad(t, "undeclared function symbol " + fam.funcName);
      fam.gen = expr();
      m_.families.push_back(std::move(fam));
    } else if (kw == "finite") {
      FinitePartGen g;
      g.name = expectStr("generator name string");
      expectPunct(':');
      g.gen = expr();
      m_.finite.push_back(std::move(g));
    } else {
      throw SyntaxError(t.line, t.col, "unknown statement '" + kw + "'");
    }
    expectPunct(';');
  }

  void finishLax() {
    if (fields_.empty()) return;
    const VectorField* V = nullptr;
    const VectorField* W = nullptr;
    for (auto& [n, f] : fields_) {
      if (n == "V") V = &f;
      if (n == "W") W = &f;
    }
    if (!V || !W || fields_.size() != 2)
      throw SemanticError(1, 1, "fields must be exactly V and W");
    m_.lax = LaxPair{*V, *W};
  }
};

void printExprStmt(std::ostream& os, const std::string& head, const Expr& e) {
  os << head << " " << e.toString() << " ;\n";
}

}  // namespace

EquationModel parseModel(const std::string& src) { return Parser(src).run(); }

std::string printModel(const EquationModel& m) {
  std::ostringstream os;
  os << "model \"" << m.id << "\" ;\n";
  if (!m.anchor.empty()) os << "anchor \"" << m.anchor << "\" ;\n";
  os << "indep";
  for (auto& n : m.ctx.indepNames) os << " " << n;
  os << " ;\n";
  for (auto& d : m.ctx.deps) os << "dep " << d.name << " " << d.maxOrder << " ;\n";
  for (auto& p : m.ctx.params) os << "param " << p << " ;\n";
  for (auto& f : m.ctx.funcs) {
    os << "fn " << f.name << "(";
    for (size_t i = 0; i < f.args.size(); ++i) os << (i ? ", " : "") << atomToString(f.args[i]);
    os << ") order " << f.maxOrder << " ;\n";
  }
  for (auto& e : m.equations)
    os << "eq: " << e.lhs.toString() << " = 0 ; principal " << atomToString(e.principal)
       << " ;\n";
  if (!m.orientFromEquations) os << "noautoorient ;\n";
  for (auto& r : m.extraRules)
    printExprStmt(os, "rule: " + atomToString(r.principal) + " =", r.rhs);
  if (m.lax) {
    for (auto side : {std::make_pair("V", &m.lax->V), std::make_pair("W", &m.lax->W)}) {
      os << "field " << side.first << ":";
      bool first = true;
      for (AtomId d : side.second->dirs) {
        os << (first ? " " : " + ") << "(" << side.second->coeff(d).toString() << ") d "
           << atomData(d).name;
        first = false;
      }
      os << " ;\n";
    }
  }
  for (auto& r : m.covering) printExprStmt(os, "cover: " + atomToString(r.lhsAtom) + " =", r.rhs);
  for (auto& r : m.recursion) printExprStmt(os, "recur: " + atomToString(r.lhsAtom) + " =", r.rhs);
  if (m.invariant) printExprStmt(os, "invariant:", *m.invariant);
  if (!m.metricOverride.empty())
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        if (!m.metricOverride[i][j].isZero())
          printExprStmt(os,
                        "metric " + std::to_string(i + 1) + " " + std::to_string(j + 1) + ":",
                        m.metricOverride[i][j]);
  for (auto& f : m.families)
    printExprStmt(os,
                  "family \"" + f.blockId + "\" " + f.funcName + " " + std::to_string(f.grade) +
                      " \"" + f.branch + "\" :",
                  f.gen);
  for (auto& g : m.finite) printExprStmt(os, "finite \"" + g.name + "\" :", g.gen);
  return os.str();
}

namespace {

bool sameField(const VectorField& a, const VectorField& b) {
  if (a.dirs != b.dirs || a.mode != b.mode) return false;
  if (a.coeffs.size() != b.coeffs.size()) return false;
  for (auto& [d, c] : a.coeffs) {
    auto it = b.coeffs.find(d);
    if (it == b.coeffs.end() || it->second != c) return false;
  }
  return true;
}

}  // namespace

bool modelEquals(const EquationModel& a, const EquationModel& b) {
  if (a.id != b.id || a.anchor != b.anchor) return false;
  if (a.ctx.indepNames != b.ctx.indepNames || a.ctx.params != b.ctx.params) return false;
  if (a.ctx.deps.size() != b.ctx.deps.size() || a.ctx.funcs.size() != b.ctx.funcs.size())
    return false;
  for (size_t i = 0; i < a.ctx.deps.size(); ++i)
    if (a.ctx.deps[i].name != b.ctx.deps[i].name ||
        a.ctx.deps[i].maxOrder != b.ctx.deps[i].maxOrder)
      return false;
  for (size_t i = 0; i < a.ctx.funcs.size(); ++i)
    if (a.ctx.funcs[i].name != b.ctx.funcs[i].name || a.ctx.funcs[i].args != b.ctx.funcs[i].args ||
        a.ctx.funcs[i].maxOrder != b.ctx.funcs[i].maxOrder)
      return false;
  if (a.equations.size() != b.equations.size()) return false;
  for (size_t i = 0; i < a.equations.size(); ++i)
    if (a.equations[i].lhs != b.equations[i].lhs ||
        a.equations[i].principal != b.equations[i].principal)
      return false;
  if (a.orientFromEquations != b.orientFromEquations) return false;
  if (a.extraRules.size() != b.extraRules.size()) return false;
  for (size_t i = 0; i < a.extraRules.size(); ++i)
    if (a.extraRules[i].principal != b.extraRules[i].principal ||
        a.extraRules[i].rhs != b.extraRules[i].rhs)
      return false;
  if (a.families.size() != b.families.size()) return false;
  for (size_t i = 0; i < a.families.size(); ++i) {
    auto &fa = a.families[i], &fb = b.families[i];
    if (fa.blockId != fb.blockId || fa.funcName != fb.funcName || fa.grade != fb.grade ||
        fa.branch != fb.branch || fa.gen != fb.gen)
      return false;
  }
  if (a.finite.size() != b.finite.size()) return false;
  for (size_t i = 0; i < a.finite.size(); ++i)
    if (a.finite[i].name != b.finite[i].name || a.finite[i].gen != b.finite[i].gen) return false;
  if (a.lax.has_value() != b.lax.has_value()) return false;
  if (a.lax && (!sameField(a.lax->V, b.lax->V) || !sameField(a.lax->W, b.lax->W))) return false;
  auto sameRules = [](const std::vector<DerivRule>& x, const std::vector<DerivRule>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i].lhsAtom != y[i].lhsAtom || x[i].rhs != y[i].rhs) return false;
    return true;
  };
  if (!sameRules(a.covering, b.covering) || !sameRules(a.recursion, b.recursion)) return false;
  if (a.invariant.has_value() != b.invariant.has_value()) return false;
  if (a.invariant && *a.invariant != *b.invariant) return false;
  if (a.metricOverride.size() != b.metricOverride.size()) return false;
  for (size_t i = 0; i < a.metricOverride.size(); ++i)
    for (size_t j = 0; j < 4; ++j)
      if (a.metricOverride[i][j] != b.metricOverride[i][j]) return false;
  return true;
}

}  // namespace jetforge
