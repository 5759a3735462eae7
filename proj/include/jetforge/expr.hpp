#ifndef JETFORGE_EXPR_HPP
#define JETFORGE_EXPR_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jetforge/poly.hpp"
#include "jetforge/quadext.hpp"

namespace jetforge {

struct DivisionByZeroExpr : std::runtime_error {
  DivisionByZeroExpr() : std::runtime_error("division by zero expression") {}
};
struct PoleAtPoint : std::runtime_error {
  PoleAtPoint() : std::runtime_error("denominator vanishes at evaluation point") {}
};
struct UnassignedAtom : std::runtime_error {
  explicit UnassignedAtom(const std::string& a) : std::runtime_error("unassigned atom: " + a) {}
};

struct ExprData {
  Poly num;
  Poly den;  // monic under the term order, gcd(num,den)=1
  size_t h;
};

// Immutable canonical rational function; hash-consed, so structural
// equality is pointer equality.
class Expr {
 public:
  Expr();  // canonical zero
  Expr(long n);                 // NOLINT implicit
  Expr(const mpq_class& q);     // NOLINT implicit
  static Expr atom(AtomId a);
  static Expr fromRational(Poly num, Poly den);

  const Poly& num() const { return p_->num; }
  const Poly& den() const { return p_->den; }
  bool isZero() const { return p_->num.isZero(); }
  bool isConstant() const { return p_->num.isConstant() && p_->den.isConstant(); }
  mpq_class constValue() const { return p_->num.constValue() / p_->den.constValue(); }

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(int e) const;
  bool operator==(const Expr& o) const { return p_ == o.p_; }
  bool operator!=(const Expr& o) const { return p_ != o.p_; }

  // formal partial derivative treating all atoms as independent
  Expr diffAtom(AtomId a) const;
  // simultaneous capture-free substitution followed by normalization
  Expr substitute(const std::map<AtomId, Expr>& rules) const;
  std::vector<AtomId> atoms() const;  // sorted by structural order, unique
  QuadVal eval(const std::function<QuadVal(AtomId)>& provider) const;

  size_t termCount() const { return p_->num.size() + p_->den.size(); }
  int totalDegree() const { return p_->num.totalDegree() + p_->den.totalDegree(); }
  size_t hash() const { return p_->h; }
  std::string toString() const;

 private:
  explicit Expr(std::shared_ptr<const ExprData> p) : p_(std::move(p)) {}
  std::shared_ptr<const ExprData> p_;
};

inline Expr operator+(long a, const Expr& b) { return Expr(a) + b; }
inline Expr operator-(long a, const Expr& b) { return Expr(a) - b; }
inline Expr operator*(long a, const Expr& b) { return Expr(a) * b; }

}  // namespace jetforge

#endif
