#pragma once

// Symbolic logarithmic forms.
//
// A rational function is kept in factored form  c * prod g_i^{e_i}  where the
// g_i ("atoms") are primitive integer polynomials with positive leading
// coefficient; monomials are always split into their variables.  dlog of
// such a function is sum e_i dlog g_i (dlog of a constant is zero), and a
// LogForm is a formal Q-linear combination of wedges
// dlog g_{i1} ^ ... ^ dlog g_{ir} with strictly increasing atoms.  Distinct
// atoms are treated as independent; callers supply irreducible factors when
// that matters.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grasslog {

using Exponents = std::vector<int>;

namespace detail {

// graded lexicographic, largest first
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b;
  }
};

}  // namespace detail

class Polynomial {
 public:
  using Terms = std::map<Exponents, mpq_class, detail::GrlexGreater>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const mpq_class& c) {
    Polynomial p(nvars);
    if (sgn(c) != 0) p.terms_.emplace(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }
  static Polynomial variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    Polynomial p(nvars);
    p.terms_.emplace(std::move(e), 1);
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                                 terms_.begin()->first.end(),
                                                                 [](int e) { return e == 0; }));
  }
  bool is_monomial() const { return terms_.size() == 1; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check(a, b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check(a, b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, -c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check(a, b);
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.accumulate(e, ca * cb);
      }
    }
    return r;
  }
  Polynomial operator-() const { return Polynomial::constant(nvars_, -1) * *this; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                          if (x.first != y.first) return detail::GrlexGreater{}(x.first, y.first);
                                          return x.second < y.second;
                                        });
  }

  /// Splits p = c * q with q a primitive integer polynomial whose leading
  /// coefficient is positive.
  std::pair<mpq_class, Polynomial> primitive_part() const {
    if (is_zero()) throw std::domain_error("primitive part of the zero polynomial");
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [e, c] : terms_) {
      den_lcm = lcm(den_lcm, c.get_den());
      num_gcd = gcd(num_gcd, c.get_num());
    }
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(terms_.begin()->second) < 0) content = -content;
    Polynomial q(nvars_);
    for (const auto& [e, c] : terms_) q.terms_.emplace(e, c / content);
    return {content, q};
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      mpq_class mag = abs(c);
      std::string sign = sgn(c) < 0 ? "-" : "+";
      if (first) {
        out += sgn(c) < 0 ? "-" : "";
      } else {
        out += " " + sign + " ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(i);
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

 private:
  static void check(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials in different variable sets");
  }
  void accumulate(const Exponents& e, const mpq_class& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    } else if (sgn(c) == 0) {
      terms_.erase(it);
    }
  }

  int nvars_;
  Terms terms_;
};

inline std::vector<std::string> default_variable_names(int n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

/// c * prod atom^e with normalized atoms.
class FactoredRational {
 public:
  using Factors = std::map<Polynomial, int>;

  explicit FactoredRational(int nvars = 0) : nvars_(nvars), constant_(1) {}

  static FactoredRational constant(int nvars, const mpq_class& c) {
    if (sgn(c) == 0) throw std::domain_error("zero is not a unit");
    FactoredRational f(nvars);
    f.constant_ = c;
    return f;
  }
  static FactoredRational variable(int nvars, int i) { return from_polynomial(Polynomial::variable(nvars, i)); }

  static FactoredRational from_polynomial(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("zero function has no logarithmic derivative");
    FactoredRational f(p.nvars());
    auto [content, prim] = p.primitive_part();
    f.constant_ = content;
    if (prim.is_constant()) return f;
    if (prim.is_monomial()) {
      const Exponents& e = prim.terms().begin()->first;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) f.multiply_atom(Polynomial::variable(p.nvars(), static_cast<int>(i)), e[i]);
      }
      return f;
    }
    f.multiply_atom(prim, 1);
    return f;
  }

  int nvars() const { return nvars_; }
  const mpq_class& constant_factor() const { return constant_; }
  const Factors& factors() const { return factors_; }

  friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("functions in different variable sets");
    a.constant_ *= b.constant_;
    for (const auto& [atom, e] : b.factors_) a.multiply_atom(atom, e);
    return a;
  }
  FactoredRational inverse() const {
    FactoredRational r(nvars_);
    r.constant_ = 1 / constant_;
    for (const auto& [atom, e] : factors_) r.factors_.emplace(atom, -e);
    return r;
  }
  friend FactoredRational operator/(const FactoredRational& a, const FactoredRational& b) { return a * b.inverse(); }
  FactoredRational operator-() const {
    FactoredRational r = *this;
    r.constant_ = -r.constant_;
    return r;
  }
  FactoredRational pow(int n) const {
    FactoredRational r(nvars_);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), constant_.get_num_mpz_t(), static_cast<unsigned long>(std::abs(n)));
    mpz_pow_ui(den.get_mpz_t(), constant_.get_den_mpz_t(), static_cast<unsigned long>(std::abs(n)));
    r.constant_ = n >= 0 ? mpq_class(num, den) : mpq_class(den, num);
    r.constant_.canonicalize();
    for (const auto& [atom, e] : factors_) r.factors_.emplace(atom, e * n);
    return r;
  }

  friend bool operator==(const FactoredRational&, const FactoredRational&) = default;

  std::string to_string(const std::vector<std::string>& names) const {
    std::string out = constant_.get_str();
    for (const auto& [atom, e] : factors_) {
      out += "*(" + atom.to_string(names) + ")";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  void multiply_atom(const Polynomial& atom, int e) {
    auto [it, inserted] = factors_.try_emplace(atom, e);
    if (!inserted) {
      it->second += e;
      if (it->second == 0) factors_.erase(it);
    }
  }

  int nvars_;
  mpq_class constant_;
  Factors factors_;
};

/// Formal exterior algebra on the symbols dlog(atom).
class LogForm {
 public:
  using Wedge = std::vector<Polynomial>;  // strictly increasing atoms
  using Terms = std::map<Wedge, mpq_class>;

  LogForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static LogForm zero(int nvars, int degree) { return LogForm(nvars, degree); }

  static LogForm dlog(const FactoredRational& f) {
    LogForm w(f.nvars(), 1);
    for (const auto& [atom, e] : f.factors()) w.add(Wedge{atom}, mpq_class(e));
    return w;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff * (f_1 ^ ... ^ f_r) for arbitrary atoms, sorting with sign.
  void add(Wedge atoms, const mpq_class& coeff) {
    if (static_cast<int>(atoms.size()) != degree_) throw std::invalid_argument("wedge of the wrong degree");
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < atoms.size(); ++i) {
      for (std::size_t j = i; j > 0 && atoms[j] < atoms[j - 1]; --j) {
        std::swap(atoms[j], atoms[j - 1]);
        sign = -sign;
      }
    }
    for (std::size_t i = 1; i < atoms.size(); ++i)
      if (atoms[i] == atoms[i - 1]) return;
    accumulate(atoms, sign > 0 ? coeff : mpq_class(-coeff));
  }

  friend LogForm wedge(const LogForm& a, const LogForm& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("forms in different variable sets");
    LogForm r(a.nvars_, a.degree_ + b.degree_);
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Wedge w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add(std::move(w), ca * cb);
      }
    }
    return r;
  }

  friend LogForm operator+(LogForm a, const LogForm& b) {
    a.check(b);
    for (const auto& [w, c] : b.terms_) a.accumulate(w, c);
    return a;
  }
  friend LogForm operator-(LogForm a, const LogForm& b) {
    a.check(b);
    for (const auto& [w, c] : b.terms_) a.accumulate(w, -c);
    return a;
  }
  friend LogForm operator*(const mpq_class& s, LogForm a) {
    if (sgn(s) == 0) {
      a.terms_.clear();
      return a;
    }
    for (auto& [w, c] : a.terms_) c *= s;
    return a;
  }

  friend bool operator==(const LogForm&, const LogForm&) = default;

  /// Stable text form, e.g. "dlog(x1)^dlog(x3) + dlog(x2)^dlog(x3)".
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      mpq_class mag = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      if (mag != 1) out += mag.get_str() + "*";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += "^";
        out += "dlog(" + w[i].to_string(names) + ")";
      }
    }
    return out;
  }
  std::string to_string() const { return to_string(default_variable_names(nvars_)); }

 private:
  void check(const LogForm& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_) throw std::invalid_argument("forms of different shape");
  }
  void accumulate(const Wedge& w, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  int nvars_;
  int degree_;
  Terms terms_;
};

}  // namespace grasslog
