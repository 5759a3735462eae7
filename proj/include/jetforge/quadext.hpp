#ifndef JETFORGE_QUADEXT_HPP
#define JETFORGE_QUADEXT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace jetforge {

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact value a + b*sqrt(D) in Q(sqrt(D)), one radicand D per context.
// D == 0 encodes a plain rational; D may be negative and need not be
// squarefree (perfect-square radicands collapse to rationals).
class QuadVal {
 public:
  QuadVal() : a_(0), b_(0), d_(0) {}
  QuadVal(const mpq_class& r) : a_(r), b_(0), d_(0) {}  // NOLINT implicit
  QuadVal(long n) : a_(n), b_(0), d_(0) {}              // NOLINT implicit
  QuadVal(mpq_class a, mpq_class b, mpq_class d);
  static QuadVal sqrtD(const mpq_class& d) { return QuadVal(0, 1, d); }

  const mpq_class& rat() const { return a_; }
  const mpq_class& irr() const { return b_; }
  const mpq_class& d() const { return d_; }
  bool isZero() const { return a_ == 0 && b_ == 0; }
  bool isRational() const { return b_ == 0; }

  QuadVal operator-() const { return QuadVal(-a_, -b_, d_); }
  QuadVal operator+(const QuadVal& o) const;
  QuadVal operator-(const QuadVal& o) const { return *this + (-o); }
  QuadVal operator*(const QuadVal& o) const;
  QuadVal inverse() const;
  QuadVal operator/(const QuadVal& o) const { return *this * o.inverse(); }
  bool operator==(const QuadVal& o) const { return a_ == o.a_ && b_ == o.b_ && (b_ == 0 || d_ == o.d_); }
  bool operator!=(const QuadVal& o) const { return !(*this == o); }

  std::string toString() const;

 private:
  const mpq_class& join(const QuadVal& o) const;
  mpq_class a_, b_, d_;
};

// If q is the square of a rational, return that (positive) square root.
bool rationalSqrt(const mpq_class& q, mpq_class& root);

}  // namespace jetforge

#endif
