#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace tnv::sym {

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the result encloses the
/// exact image of the operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 128);
  Interval(const mpq_class& q, mpfr_prec_t bits);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval hull(const mpq_class& a, const mpq_class& b, mpfr_prec_t bits);
  static Interval pi(mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }
  double lo_double() const;
  double hi_double() const;
  long double mid_long_double() const;
  /// Upper bound on hi - lo.
  double width() const;

  bool contains_zero() const;
  bool strictly_positive() const;
  bool strictly_negative() const;
  bool contains(const mpq_class& q) const;
  bool overlaps(const Interval& o) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// DomainError when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval pow(unsigned k) const;
  /// DomainError when the interval reaches below zero.
  Interval sqrt() const;
  Interval sin() const;
  Interval cos() const;

  /// "[lo, hi]" with `digits` significant decimal digits.
  std::string str(int digits = 25) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace tnv::sym
