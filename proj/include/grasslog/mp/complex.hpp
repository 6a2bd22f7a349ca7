#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "grasslog/linalg.hpp"
#include "grasslog/mp/real.hpp"
#include "json.hpp"

namespace grasslog::mp {

/// Arbitrary-precision complex number; precision in bits is that of the parts.
class Complex {
 public:
  explicit Complex(Bits bits = 64) : re_(bits), im_(bits) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}
  Complex(long re, long im, Bits bits) : re_(re, bits), im_(im, bits) {}

  /// Parses "a+bi", "a-bi", "a", "bi" with decimal a, b.
  static Complex parse(std::string_view text, Bits bits) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i') return Complex(Real::from_string(s, bits), Real(bits));
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    auto imag_part = [&](std::string t) {
      if (t.empty() || t == "+") return Real(1, bits);
      if (t == "-") return Real(-1, bits);
      return Real::from_string(t, bits);
    };
    if (split == std::string::npos) return Complex(Real(bits), imag_part(s));
    return Complex(Real::from_string(s.substr(0, split), bits), imag_part(s.substr(split)));
  }

  static Complex from_json(const nlohmann::json& j, Bits bits) {
    return Complex(Real::from_string(j.at("re").get<std::string>(), bits),
                   Real::from_string(j.at("im").get<std::string>(), bits));
  }

  /// e^{i theta}
  static Complex polar(const Real& r, const Real& theta) { return Complex(r * cos(theta), r * sin(theta)); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Bits precision() const { return std::max(re_.precision(), im_.precision()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex conj() const { return Complex(re_, -im_); }

  friend Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re_ + b.re_, a.im_ + b.im_); }
  friend Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re_ - b.re_, a.im_ - b.im_); }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real den = b.re_ * b.re_ + b.im_ * b.im_;
    if (den.is_zero()) throw DivisionByZero();
    return Complex((a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den);
  }
  friend Complex operator*(const Complex& a, const Real& s) { return Complex(a.re_ * s, a.im_ * s); }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Real& s) { return Complex(a.re_ / s, a.im_ / s); }
  friend Complex operator*(const Complex& a, long s) { return Complex(a.re_ * s, a.im_ * s); }
  friend Complex operator/(const Complex& a, long s) { return Complex(a.re_ / s, a.im_ / s); }
  friend Complex operator+(const Complex& a, const Real& s) { return Complex(a.re_ + s, a.im_); }
  friend Complex operator+(const Complex& a, long s) { return Complex(a.re_ + s, a.im_); }
  friend Complex operator-(long s, const Complex& a) { return Complex(s - a.re_, -a.im_); }

  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  nlohmann::json to_json(int digits) const { return {{"re", re_.to_string(digits)}, {"im", im_.to_string(digits)}}; }

 private:
  Real re_;
  Real im_;
};

inline Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
/// Principal argument in (-pi, pi]; a zero imaginary part counts as +0.
inline Real arg(const Complex& z) {
  if (z.im().is_zero()) return z.re().sign() < 0 ? pi(z.precision()) : Real(z.precision());
  return atan2(z.im(), z.re());
}
/// Principal logarithm, cut along (-inf, 0].
inline Complex log(const Complex& z) {
  if (z.is_zero()) throw std::domain_error("log(0)");
  return Complex(log(abs(z)), arg(z));
}
inline Complex exp(const Complex& z) { return Complex::polar(exp(z.re()), z.im()); }

inline Complex pow(const Complex& z, unsigned long n) {
  Complex base = z, acc(1, 0, z.precision());
  while (n != 0) {
    if (n & 1UL) acc = acc * base;
    base = base * base;
    n >>= 1UL;
  }
  return acc;
}

}  // namespace grasslog::mp

namespace grasslog {

using BigComplex = mp::Complex;

template <>
struct ScalarTraits<mp::Complex> {
  static constexpr bool exact = false;
  static mp::Complex zero_like(const mp::Complex& s) { return mp::Complex(s.precision()); }
  static mp::Complex one_like(const mp::Complex& s) { return mp::Complex(1, 0, s.precision()); }
  static bool is_zero(const mp::Complex& s) { return s.is_zero(); }
  static double magnitude(const mp::Complex& s) { return mp::abs(s).to_double(); }
};

}  // namespace grasslog
