#include "jetforge/quadext.hpp"

namespace jetforge {

QuadVal::QuadVal(mpq_class a, mpq_class b, mpq_class d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  mpq_class r;
  if (rationalSqrt(d_, r)) {
    a_ += b_ * r;
    b_ = 0;
    d_ = 0;
  }
}

const mpq_class& QuadVal::join(const QuadVal& o) const {
  if (b_ == 0) return o.d_;
  if (o.b_ == 0) return d_;
  if (d_ != o.d_) throw ArithmeticError("mixing distinct quadratic extensions");
  return d_;
}

QuadVal QuadVal::operator+(const QuadVal& o) const {
  mpq_class d = join(o);
  return QuadVal(a_ + o.a_, b_ + o.b_, d);
}

QuadVal QuadVal::operator*(const QuadVal& o) const {
  mpq_class d = join(o);
  return QuadVal(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

QuadVal QuadVal::inverse() const {
  // 1/(a+b√d) = (a-b√d)/(a²-b²d)
  mpq_class n = a_ * a_ - b_ * b_ * d_;
  if (n == 0) throw ArithmeticError("division by zero in Q(sqrt d)");
  return QuadVal(a_ / n, -b_ / n, d_);
}

std::string QuadVal::toString() const {
  if (b_ == 0) return a_.get_str();
  return a_.get_str() + " + (" + b_.get_str() + ")*sqrt(" + d_.get_str() + ")";
}

bool rationalSqrt(const mpq_class& q, mpq_class& root) {
  if (q < 0) return false;
  if (q == 0) {
    root = 0;
    return true;
  }
  const mpz_class &n = q.get_num(), &d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn) / mpq_class(rd);
  return true;
}

}  // namespace jetforge
