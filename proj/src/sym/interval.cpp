#include "tnv/sym/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tnv/errors.hpp"

namespace tnv::sym {

Interval::Interval(mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const mpq_class& q, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.precision());
    mpfr_set_prec(hi_, o.precision());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::hull(const mpq_class& a, const mpq_class& b, mpfr_prec_t bits) {
  Interval r(bits);
  const mpq_class& lo = a < b ? a : b;
  const mpq_class& hi = a < b ? b : a;
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

long double Interval::mid_long_double() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  long double v = mpfr_get_ld(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::strictly_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

namespace {
mpfr_prec_t joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = joint(a, b);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (const mpfr_t* x : xs) {
    for (const mpfr_t* y : ys) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an enclosure of zero");
  Interval inv(b.precision());
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::pow(unsigned k) const {
  Interval r(precision());
  if (k == 0) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  if (k % 2 == 1 || mpfr_sgn(lo_) >= 0) {
    mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(hi_) <= 0) {
    mpfr_pow_ui(r.lo_, hi_, k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, lo_, k, MPFR_RNDU);
    return r;
  }
  // even power of an interval straddling zero
  mpfr_set_zero(r.lo_, 1);
  mpfr_t a;
  mpfr_init2(a, precision());
  mpfr_abs(a, lo_, MPFR_RNDU);
  if (mpfr_less_p(a, hi_)) mpfr_set(a, hi_, MPFR_RNDU);
  mpfr_pow_ui(r.hi_, a, k, MPFR_RNDU);
  mpfr_clear(a);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw DomainError("square root of an enclosure reaching below zero");
  Interval r(precision());
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

namespace {

// Encloses sin on [lo, hi] when `shift` is 0 and cos when it is 1: the
// endpoint values plus every extremum that may fall inside.
Interval trig(const Interval& x, int shift) {
  mpfr_prec_t p = x.precision();
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  auto fn = [shift](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    if (shift == 0) {
      mpfr_sin(out, in, rnd);
    } else {
      mpfr_cos(out, in, rnd);
    }
  };
  fn(r.lo_mut(), x.lo(), MPFR_RNDD);
  fn(t, x.hi(), MPFR_RNDD);
  if (mpfr_less_p(t, r.lo())) mpfr_set(r.lo_mut(), t, MPFR_RNDD);
  fn(r.hi_mut(), x.lo(), MPFR_RNDU);
  fn(t, x.hi(), MPFR_RNDU);
  if (mpfr_greater_p(t, r.hi())) mpfr_set(r.hi_mut(), t, MPFR_RNDU);
  mpfr_clear(t);

  // extrema of sin sit at pi/2 + k pi, those of cos at k pi
  Interval pi = Interval::pi(p);
  double lo = x.lo_double();
  double hi = x.hi_double();
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi - lo > 7.0) {
    mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
    mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    return r;
  }
  long kmin = static_cast<long>(std::floor(lo / M_PI)) - 2;
  long kmax = static_cast<long>(std::ceil(hi / M_PI)) + 2;
  Interval half(mpq_class(shift == 0 ? 1 : 0, 2), p);
  for (long k = kmin; k <= kmax; ++k) {
    Interval c = (Interval(mpq_class(k), p) + half) * pi;
    if (!c.overlaps(x)) continue;
    // sin peaks at pi/2 + 2k pi, cos at 2k pi
    bool maximum = (k % 2 == 0);
    if (maximum) {
      mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    } else {
      mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
    }
  }
  return r;
}

}  // namespace

Interval Interval::sin() const { return trig(*this, 0); }
Interval Interval::cos() const { return trig(*this, 1); }

std::string Interval::str(int digits) const {
  char* a = nullptr;
  char* b = nullptr;
  mpfr_asprintf(&a, "%.*RDe", digits, lo_);
  mpfr_asprintf(&b, "%.*RUe", digits, hi_);
  std::string s = std::string("[") + a + ", " + b + "]";
  mpfr_free_str(a);
  mpfr_free_str(b);
  return s;
}

}  // namespace tnv::sym
