#pragma once

// Exact arithmetic over the base fields: Q, Q(sqrt d) and F_p.
//
// Every ExactScalar carries its FieldDescriptor.  Values are stored in a
// canonical representation so that equality of scalars is equality of
// representations:
//   rational   a              (reduced fraction), b = 0
//   quadratic  a + b*sqrt(d)  (a, b reduced fractions)
//   prime      a = r          (integer residue 0 <= r < p), b = 0

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace grasslog {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

enum class FieldKind : std::uint8_t { rational, quadratic, prime };

namespace detail {

inline bool is_squarefree(long n) {
  unsigned long a = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  for (unsigned long q = 2; q * q <= a; ++q) {
    if (a % (q * q) == 0) return false;
  }
  return true;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

inline int cmp_mpq(const mpq_class& x, const mpq_class& y) {
  int c = ::cmp(x, y);
  return (c > 0) - (c < 0);
}

}  // namespace detail

class FieldDescriptor {
 public:
  constexpr FieldDescriptor() = default;

  static FieldDescriptor rational() { return {}; }

  static FieldDescriptor quadratic(long d) {
    if (d == 0 || d == 1 || !detail::is_squarefree(d)) {
      throw FieldError("quadratic field needs a squarefree d != 0, 1; got " + std::to_string(d));
    }
    return FieldDescriptor(FieldKind::quadratic, d);
  }

  static FieldDescriptor prime(long p) {
    if (!detail::is_prime(p) || p > (1L << 31)) {
      throw FieldError("prime field needs a prime p < 2^31; got " + std::to_string(p));
    }
    return FieldDescriptor(FieldKind::prime, p);
  }

  /// Parses "q", "qsqrt:<d>" and "fp:<p>".
  static FieldDescriptor parse(std::string_view text) {
    auto number_after = [&](std::string_view prefix) {
      std::string rest(text.substr(prefix.size()));
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(rest, &used);
      } catch (const std::exception&) {
        throw FieldError("bad field descriptor '" + std::string(text) + "'");
      }
      if (used != rest.size()) throw FieldError("bad field descriptor '" + std::string(text) + "'");
      return v;
    };
    if (text == "q") return rational();
    if (text.starts_with("qsqrt:")) return quadratic(number_after("qsqrt:"));
    if (text.starts_with("fp:")) return prime(number_after("fp:"));
    throw FieldError("bad field descriptor '" + std::string(text) + "' (expected q, qsqrt:<d>, fp:<p>)");
  }

  FieldKind kind() const { return kind_; }
  /// d for quadratic fields, p for prime fields, 0 for Q.
  long parameter() const { return param_; }
  bool is_finite() const { return kind_ == FieldKind::prime; }

  std::string to_string() const {
    switch (kind_) {
      case FieldKind::rational: return "q";
      case FieldKind::quadratic: return "qsqrt:" + std::to_string(param_);
      case FieldKind::prime: return "fp:" + std::to_string(param_);
    }
    return "?";
  }

  auto operator<=>(const FieldDescriptor&) const = default;

 private:
  constexpr FieldDescriptor(FieldKind k, long param) : kind_(k), param_(param) {}

  FieldKind kind_ = FieldKind::rational;
  long param_ = 0;
};

class ExactScalar {
 public:
  ExactScalar() = default;

  ExactScalar(FieldDescriptor f, mpq_class a, mpq_class b = 0)
      : field_(f), a_(std::move(a)), b_(std::move(b)) {
    canonicalize();
  }

  static ExactScalar zero(FieldDescriptor f) { return ExactScalar(f, 0); }
  static ExactScalar one(FieldDescriptor f) { return ExactScalar(f, 1); }
  static ExactScalar from_int(FieldDescriptor f, long v) { return ExactScalar(f, v); }
  static ExactScalar rational(const mpq_class& q) { return ExactScalar(FieldDescriptor::rational(), q); }

  const FieldDescriptor& field() const { return field_; }
  /// Rational part, or the residue for prime fields.
  const mpq_class& a() const { return a_; }
  /// Coefficient of sqrt(d); zero outside quadratic fields.
  const mpq_class& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
  /// True when the value lies in the prime subfield (Q or F_p).
  bool is_rational() const { return sgn(b_) == 0; }

  ExactScalar operator-() const { return ExactScalar(field_, -a_, -b_); }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    check_same(x, y);
    return ExactScalar(x.field_, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    check_same(x, y);
    return ExactScalar(x.field_, x.a_ - y.a_, x.b_ - y.b_);
  }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    check_same(x, y);
    if (x.field_.kind() == FieldKind::quadratic) {
      const long d = x.field_.parameter();
      return ExactScalar(x.field_, x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    return ExactScalar(x.field_, x.a_ * y.a_);
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) { return x * y.inverse(); }

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  ExactScalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    switch (field_.kind()) {
      case FieldKind::rational: return ExactScalar(field_, 1 / a_);
      case FieldKind::quadratic: {
        // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2); the norm is
        // nonzero because d is not a square.
        mpq_class norm = a_ * a_ - field_.parameter() * b_ * b_;
        return ExactScalar(field_, a_ / norm, -b_ / norm);
      }
      case FieldKind::prime: {
        mpz_class inv;
        mpz_class p = field_.parameter();
        mpz_invert(inv.get_mpz_t(), a_.get_num().get_mpz_t(), p.get_mpz_t());
        return ExactScalar(field_, mpq_class(inv));
      }
    }
    throw FieldError("unknown field kind");
  }

  /// x^n for any integer n (negative powers need x != 0).
  ExactScalar pow(long n) const {
    ExactScalar base = n < 0 ? inverse() : *this;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    ExactScalar acc = one(field_);
    while (e != 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Total order on representations (not a field ordering).
  friend std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y) {
    if (auto c = x.field_ <=> y.field_; c != 0) return c;
    if (int c = detail::cmp_mpq(x.a_, y.a_); c != 0) return c <=> 0;
    return detail::cmp_mpq(x.b_, y.b_) <=> 0;
  }

  std::string to_string() const {
    switch (field_.kind()) {
      case FieldKind::rational: return a_.get_str();
      case FieldKind::quadratic: {
        if (sgn(b_) == 0) return a_.get_str();
        std::string s = sgn(a_) == 0 ? "" : a_.get_str() + (sgn(b_) > 0 ? "+" : "");
        return s + b_.get_str() + "*sqrt(" + std::to_string(field_.parameter()) + ")";
      }
      case FieldKind::prime: return a_.get_str() + " mod " + std::to_string(field_.parameter());
    }
    return "?";
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

 private:
  static void check_same(const ExactScalar& x, const ExactScalar& y) {
    if (x.field_ != y.field_) {
      throw FieldError("field mismatch: " + x.field_.to_string() + " vs " + y.field_.to_string());
    }
  }

  void canonicalize() {
    a_.canonicalize();
    b_.canonicalize();
    switch (field_.kind()) {
      case FieldKind::rational: b_ = 0; break;
      case FieldKind::quadratic: break;
      case FieldKind::prime: {
        // Rationals with a denominator prime to p reduce to a residue.
        mpz_class p = field_.parameter();
        mpz_class num = a_.get_num() % p;
        mpz_class den = a_.get_den() % p;
        if (den == 0) throw DivisionByZero();
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        mpz_class r = (num * inv) % p;
        if (r < 0) r += p;
        a_ = r;
        b_ = 0;
        break;
      }
    }
  }

  FieldDescriptor field_;
  mpq_class a_ = 0;
  mpq_class b_ = 0;
};

/// Uniform-ish random scalar of bounded height, deterministic for a given engine state.
/// Rational coordinates are n/d with |n| <= height, 1 <= d <= height.
template <class Rng>
ExactScalar random_scalar(const FieldDescriptor& f, Rng& rng, long height = 9) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, std::max(1L, height / 2));
  switch (f.kind()) {
    case FieldKind::rational: return ExactScalar(f, mpq_class(num(rng), den(rng)));
    case FieldKind::quadratic:
      return ExactScalar(f, mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    case FieldKind::prime: {
      std::uniform_int_distribution<long> r(0, f.parameter() - 1);
      return ExactScalar(f, r(rng));
    }
  }
  return ExactScalar::zero(f);
}

template <class Rng>
ExactScalar random_nonzero_scalar(const FieldDescriptor& f, Rng& rng, long height = 9) {
  for (;;) {
    ExactScalar s = random_scalar(f, rng, height);
    if (!s.is_zero()) return s;
  }
}

// JSON: rationals are "p/q" strings, quadratic elements {"a","b","d"},
// finite-field elements {"r","p"}.

inline std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw FieldError("bad rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

inline nlohmann::json to_json_value(const ExactScalar& x) {
  switch (x.field().kind()) {
    case FieldKind::rational: return rational_string(x.a());
    case FieldKind::quadratic:
      return {{"a", rational_string(x.a())}, {"b", rational_string(x.b())}, {"d", x.field().parameter()}};
    case FieldKind::prime: return {{"r", x.a().get_num().get_si()}, {"p", x.field().parameter()}};
  }
  return nullptr;
}

inline ExactScalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return ExactScalar::rational(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return ExactScalar::rational(j.get<long>());
  if (j.is_object() && j.contains("d")) {
    auto f = FieldDescriptor::quadratic(j.at("d").get<long>());
    return ExactScalar(f, parse_rational(j.at("a").get<std::string>()),
                       parse_rational(j.at("b").get<std::string>()));
  }
  if (j.is_object() && j.contains("p")) {
    auto f = FieldDescriptor::prime(j.at("p").get<long>());
    long r = j.at("r").get<long>();
    if (r < 0 || r >= f.parameter()) throw FieldError("residue out of range");
    return ExactScalar(f, r);
  }
  throw FieldError("unrecognised scalar JSON: " + j.dump());
}

}  // namespace grasslog
