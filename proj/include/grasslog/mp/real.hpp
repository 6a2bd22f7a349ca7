#pragma once

// RAII wrapper around an MPFR number.  Every value carries its own
// precision; binary operations produce a result at the larger of the two
// operand precisions.  There is no global precision state.

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace grasslog::mp {

using Bits = mpfr_prec_t;

/// Bits needed to carry `digits` decimal digits.
inline Bits bits_for_digits(int digits) {
  return static_cast<Bits>(std::ceil(digits * 3.321928094887362)) + 8;
}

class Real {
 public:
  explicit Real(Bits bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  /// Exact conversion of a double (doubles are dyadic).
  static Real from_double(double x, Bits bits) {
    Real r(bits);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real from_string(std::string_view text, Bits bits) {
    Real r(bits);
    std::string s(text);
    char* end = nullptr;
    if (s.empty()) throw std::invalid_argument("empty decimal string");
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end != s.c_str() + s.size()) throw std::invalid_argument("bad decimal '" + s + "'");
    return r;
  }
  static Real from_mpq(const mpq_t q, Bits bits) {
    Real r(bits);
    mpfr_set_q(r.v_, q, MPFR_RNDN);
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Bits precision() const { return mpfr_get_prec(v_); }
  /// Same value rounded to a new precision.
  Real with_precision(Bits bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// floor(log2 |x|)+1, or a very negative number for zero.
  long exponent2() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define GRASSLOG_REAL_BINOP(op, fn, fn_si)                                       \
  friend Real operator op(const Real& a, const Real& b) {                        \
    Real r(std::max(a.precision(), b.precision()));                              \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                             \
    return r;                                                                    \
  }                                                                              \
  friend Real operator op(const Real& a, long b) {                               \
    Real r(a.precision());                                                       \
    fn_si(r.v_, a.v_, b, MPFR_RNDN);                                             \
    return r;                                                                    \
  }                                                                              \
  Real& operator op##=(const Real& b) { return *this = *this op b; }             \
  Real& operator op##=(long b) { return *this = *this op b; }

  GRASSLOG_REAL_BINOP(+, mpfr_add, mpfr_add_si)
  GRASSLOG_REAL_BINOP(-, mpfr_sub, mpfr_sub_si)
  GRASSLOG_REAL_BINOP(*, mpfr_mul, mpfr_mul_si)
  GRASSLOG_REAL_BINOP(/, mpfr_div, mpfr_div_si)
#undef GRASSLOG_REAL_BINOP

  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_) != 0) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  /// Scientific notation with `digits` significant digits, e.g. "9.15965e-01".
  std::string to_string(int digits) const {
    if (digits < 1) digits = 1;
    int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
    std::string s(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(s.data(), s.size(), "%.*Re", digits - 1, v_);
    s.resize(static_cast<std::size_t>(n));
    return s;
  }

 private:
  mpfr_t v_;
};

#define GRASSLOG_REAL_UNARY(name, fn)       \
  inline Real name(const Real& x) {         \
    Real r(x.precision());                  \
    fn(r.raw(), x.raw(), MPFR_RNDN);        \
    return r;                               \
  }

GRASSLOG_REAL_UNARY(abs, mpfr_abs)
GRASSLOG_REAL_UNARY(sqrt, mpfr_sqrt)
GRASSLOG_REAL_UNARY(log, mpfr_log)
GRASSLOG_REAL_UNARY(exp, mpfr_exp)
GRASSLOG_REAL_UNARY(sin, mpfr_sin)
GRASSLOG_REAL_UNARY(cos, mpfr_cos)
#undef GRASSLOG_REAL_UNARY

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real hypot(const Real& x, const Real& y) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

/// x * 2^k
inline Real ldexp(const Real& x, long k) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}

inline Real pi(Bits bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

inline Real log2_constant(Bits bits) {
  Real r(bits);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

/// 10^(-k) at the given precision.
inline Real pow10_neg(int k, Bits bits) {
  Real ten(10, bits);
  return pow(ten, -k);
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace grasslog::mp
