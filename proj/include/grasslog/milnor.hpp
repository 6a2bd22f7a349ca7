#pragma once

// Suslin symbols <a_1, ..., a_m>, their images {a_1, ..., a_m} in Milnor
// K-theory, an equality oracle for K^M_2(Q), the dlog map psi into
// logarithmic forms and the calibration of the volume form vol_m between the
// two coordinate charts of G^m_0.

#include <gmpxx.h>

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasslog/chain.hpp"
#include "grasslog/configuration.hpp"
#include "grasslog/forms.hpp"

namespace grasslog {

struct SuslinSymbol {
  std::vector<ExactScalar> entries;
  int m() const { return static_cast<int>(entries.size()); }
  friend bool operator==(const SuslinSymbol&, const SuslinSymbol&) = default;
};

/// Formal integer combination of symbols {f_1, ..., f_m}.
template <class E>
struct SymbolSum {
  struct Term {
    mpz_class coeff;
    std::vector<E> entries;
  };
  int m = 0;
  std::vector<Term> terms;

  void add(std::vector<E> entries, const mpz_class& coeff) {
    if (static_cast<int>(entries.size()) != m) throw std::invalid_argument("symbol of the wrong length");
    if (sgn(coeff) != 0) terms.push_back({coeff, std::move(entries)});
  }
  SymbolSum& operator+=(const SymbolSum& o) {
    if (o.m != m) throw std::invalid_argument("symbol sums of different degree");
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
};

using MilnorSymbolSum = SymbolSum<ExactScalar>;
using FunctionSymbolSum = SymbolSum<FactoredRational>;

/// <a_1..a_m> for the orbit of (e_1, ..., e_m, sum a_i e_i).
inline SuslinSymbol suslin_class(const OrbitPoint<ExactScalar>& p) {
  Vector<ExactScalar> a = orbit_coordinates(p);
  for (const auto& x : a) {
    if (x.is_zero()) throw NotGeneralPosition();
  }
  return SuslinSymbol{std::move(a)};
}

inline SuslinSymbol suslin_class(const Configuration<ExactScalar>& c) { return suslin_class(normalize(c)); }

inline MilnorSymbolSum to_milnor(const SuslinSymbol& s) {
  MilnorSymbolSum out;
  out.m = s.m();
  out.add(s.entries, 1);
  return out;
}

/// Image of a degree-m chain (tuples of m+1 vectors in k^m) under the symbol map.
template <class Coeff>
MilnorSymbolSum symbol_image(const Chain<Coeff>& c) {
  MilnorSymbolSum out;
  out.m = c.dim();
  for (const auto& [basis, coeff] : c.terms()) {
    if (static_cast<int>(basis.size()) != c.dim() + 1) throw DimensionMismatch("symbol_image needs tuples of m+1 vectors");
    mpz_class k;
    if constexpr (std::is_same_v<Coeff, mpz_class>) {
      k = coeff;
    } else {
      if (coeff.get_den() != 1) throw std::domain_error("symbol_image needs integer coefficients");
      k = coeff.get_num();
    }
    out.add(suslin_class(basis).entries, k);
  }
  return out;
}

/// (-1)^(m-1) (m-1)! {a_1, ..., a_m}: the expected image of a product of
/// units under the map from K_m to K^M_m.
inline MilnorSymbolSum phi_on_products(std::span<const ExactScalar> a) {
  const int m = static_cast<int>(a.size());
  mpz_class factor = 1;
  for (int i = 2; i < m; ++i) factor *= i;
  if ((m - 1) % 2 == 1) factor = -factor;
  MilnorSymbolSum out;
  out.m = m;
  out.add(std::vector<ExactScalar>(a.begin(), a.end()), factor);
  return out;
}

// ---------------------------------------------------------------------------
// K^M_2(Q) oracle.  K_2(Q) = {+-1} x (+)_{p odd} F_p^x via the real symbol and
// the tame symbols; two sums are equal iff these invariants agree.

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KM2Class {
  int real_symbol = 1;                // product of (-1 if a<0 and b<0)
  std::map<mpz_class, mpz_class> tame;  // odd p -> residue != 1

  bool is_trivial() const { return real_symbol == 1 && tame.empty(); }
  friend bool operator==(const KM2Class&, const KM2Class&) = default;

  std::string to_string() const {
    std::string s = "real=" + std::to_string(real_symbol);
    for (const auto& [p, r] : tame) s += " p" + p.get_str() + "=" + r.get_str();
    return s;
  }
};

namespace detail {

inline void collect_primes(mpz_class n, std::map<mpz_class, int>& primes) {
  n = abs(n);
  for (unsigned long q = 2; n > 1; ++q) {
    if (mpz_class(q) * q > n) {
      primes[n] = 1;
      return;
    }
    if (q > 10000000UL) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        primes[n] = 1;
        return;
      }
      throw FactorizationError("km2_reduce: cannot factor " + n.get_str());
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
      primes[mpz_class(q)] = 1;
      while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) n /= q;
    }
  }
}

inline long valuation(const mpq_class& x, const mpz_class& p) {
  long v = 0;
  mpz_class num = x.get_num(), den = x.get_den();
  while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t()) != 0) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()) != 0) {
    den /= p;
    --v;
  }
  return v;
}

inline mpq_class rational_pow(const mpq_class& x, long e) {
  mpz_class num, den;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
  mpq_class r = e >= 0 ? mpq_class(num, den) : mpq_class(den, num);
  r.canonicalize();
  return r;
}

inline mpz_class residue(const mpq_class& x, const mpz_class& p) {
  mpz_class inv, r;
  mpz_class den = x.get_den() % p;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) throw DivisionByZero();
  r = (x.get_num() % p) * inv % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace detail

/// Tame symbol at p: (-1)^{v(a)v(b)} a^{v(b)} / b^{v(a)} mod p.
inline mpz_class tame_symbol(const mpq_class& a, const mpq_class& b, const mpz_class& p) {
  const long va = detail::valuation(a, p), vb = detail::valuation(b, p);
  mpq_class x = detail::rational_pow(a, vb) / detail::rational_pow(b, va);
  if ((va * vb) % 2 != 0) x = -x;
  return detail::residue(x, p);
}

inline KM2Class km2_reduce(const MilnorSymbolSum& s) {
  if (s.m != 2) throw std::invalid_argument("km2_reduce handles symbols of degree 2 only");
  std::map<mpz_class, int> primes;
  for (const auto& t : s.terms) {
    for (const auto& x : t.entries) {
      if (x.field().kind() != FieldKind::rational) throw FieldError("km2_reduce needs entries in Q");
      if (x.is_zero()) throw std::domain_error("symbol entry is zero");
      detail::collect_primes(x.a().get_num(), primes);
      detail::collect_primes(x.a().get_den(), primes);
    }
  }
  KM2Class out;
  for (const auto& t : s.terms) {
    const bool both_negative = sgn(t.entries[0].a()) < 0 && sgn(t.entries[1].a()) < 0;
    if (both_negative && mpz_odd_p(t.coeff.get_mpz_t()) != 0) out.real_symbol = -out.real_symbol;
  }
  for (const auto& [p, unused] : primes) {
    if (p == 2) continue;  // F_2^x is trivial
    mpz_class acc = 1;
    for (const auto& t : s.terms) {
      mpz_class v = tame_symbol(t.entries[0].a(), t.entries[1].a(), p);
      mpz_class powered;
      mpz_class e = t.coeff;
      if (e < 0) {
        mpz_invert(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        e = -e;
      }
      mpz_powm(powered.get_mpz_t(), v.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      acc = acc * powered % p;
    }
    if (acc != 1) out.tame.emplace(p, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// psi and the volume forms

/// psi({f_1..f_m}) = dlog f_1 ^ ... ^ dlog f_m, extended additively.
inline LogForm psi(const FunctionSymbolSum& s) {
  if (s.terms.empty()) throw std::invalid_argument("psi of an empty symbol sum needs a variable count");
  const int nvars = s.terms.front().entries.front().nvars();
  LogForm out(nvars, s.m);
  for (const auto& t : s.terms) {
    LogForm w = LogForm::dlog(t.entries.front());
    for (std::size_t i = 1; i < t.entries.size(); ++i) w = wedge(w, LogForm::dlog(t.entries[i]));
    out = out + mpq_class(t.coeff) * w;
  }
  return out;
}

/// dlog x_1 ^ ... ^ dlog x_m on the chart [1, x_1, ..., x_m].
inline LogForm vol_form(int m) {
  FunctionSymbolSum s;
  s.m = m;
  std::vector<FactoredRational> xs;
  for (int i = 0; i < m; ++i) xs.push_back(FactoredRational::variable(m, i));
  s.add(std::move(xs), 1);
  return psi(s);
}

/// Signed monomial c * a_1^{e_1} ... a_n^{e_n}, or zero.  Closed under
/// products and quotients; a sum is only defined when one side is zero or
/// both sides are the same monomial.  Enough for eliminating on matrices
/// whose entries are monomials and whose pivots are already isolated.
class LaurentTerm {
 public:
  LaurentTerm() = default;
  LaurentTerm(int nvars, mpq_class c) : coeff_(std::move(c)), exps_(static_cast<std::size_t>(nvars), 0) {
    if (sgn(coeff_) == 0) std::fill(exps_.begin(), exps_.end(), 0);
  }
  static LaurentTerm variable(int nvars, int i) {
    LaurentTerm t(nvars, 1);
    t.exps_.at(static_cast<std::size_t>(i)) = 1;
    return t;
  }

  const mpq_class& coefficient() const { return coeff_; }
  const Exponents& exponents() const { return exps_; }
  int nvars() const { return static_cast<int>(exps_.size()); }
  bool is_zero() const { return sgn(coeff_) == 0; }

  LaurentTerm operator-() const {
    LaurentTerm r = *this;
    r.coeff_ = -r.coeff_;
    return r;
  }
  friend LaurentTerm operator*(const LaurentTerm& a, const LaurentTerm& b) {
    if (a.is_zero() || b.is_zero()) return LaurentTerm(a.nvars(), 0);
    LaurentTerm r(a.nvars(), a.coeff_ * b.coeff_);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    return r;
  }
  friend LaurentTerm operator/(const LaurentTerm& a, const LaurentTerm& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return a;
    LaurentTerm r(a.nvars(), a.coeff_ / b.coeff_);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
    return r;
  }
  friend LaurentTerm operator+(const LaurentTerm& a, const LaurentTerm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exps_ != b.exps_) throw std::domain_error("LaurentTerm: sum of distinct monomials");
    LaurentTerm r(a.nvars(), a.coeff_ + b.coeff_);
    if (!r.is_zero()) r.exps_ = a.exps_;
    return r;
  }
  friend LaurentTerm operator-(const LaurentTerm& a, const LaurentTerm& b) { return a + (-b); }
  friend bool operator==(const LaurentTerm&, const LaurentTerm&) = default;

  FactoredRational to_function() const {
    if (is_zero()) throw std::domain_error("zero has no logarithmic derivative");
    FactoredRational f = FactoredRational::constant(nvars(), coeff_);
    for (int i = 0; i < nvars(); ++i) {
      if (exps_[static_cast<std::size_t>(i)] != 0) {
        f = f * FactoredRational::variable(nvars(), i).pow(exps_[static_cast<std::size_t>(i)]);
      }
    }
    return f;
  }

 private:
  mpq_class coeff_ = 0;
  Exponents exps_;
};

template <>
struct ScalarTraits<LaurentTerm> {
  static constexpr bool exact = true;
  static LaurentTerm zero_like(const LaurentTerm& s) { return LaurentTerm(s.nvars(), 0); }
  static LaurentTerm one_like(const LaurentTerm& s) { return LaurentTerm(s.nvars(), 1); }
  static bool is_zero(const LaurentTerm& s) { return s.is_zero(); }
  static double magnitude(const LaurentTerm& s) { return s.is_zero() ? 0.0 : 1.0; }
};

struct VolumeCalibration {
  int m = 0;
  int sign = 0;            // epsilon_m
  LogForm pullback;        // chart_change^* vol_m, in the a-variables
  LogForm target;          // dlog a_1 ^ ... ^ dlog a_m
  std::vector<LaurentTerm> chart;  // x_i as functions of a
};

/// Pulls vol_m back through chart_change symbolically and returns the sign
/// epsilon_m with pullback = epsilon_m * dlog a_1 ^ ... ^ dlog a_m.
inline VolumeCalibration volume_calibration(int m) {
  if (m < 1 || m > 8) throw std::invalid_argument("volume_calibration supports 1 <= m <= 8");
  std::vector<LaurentTerm> a;
  for (int i = 0; i < m; ++i) a.push_back(LaurentTerm::variable(m, i));
  Vector<LaurentTerm> x = chart_change<LaurentTerm>(a);

  FunctionSymbolSum pulled;
  pulled.m = m;
  std::vector<FactoredRational> xs;
  for (const auto& xi : x) xs.push_back(xi.to_function());
  pulled.add(std::move(xs), 1);

  FunctionSymbolSum target;
  target.m = m;
  std::vector<FactoredRational> as;
  for (int i = 0; i < m; ++i) as.push_back(FactoredRational::variable(m, i));
  target.add(std::move(as), 1);

  VolumeCalibration out{m, 0, psi(pulled), psi(target), x};
  for (int s : {1, -1}) {
    if (out.pullback == mpq_class(s) * out.target) out.sign = s;
  }
  if (out.sign == 0) throw std::logic_error("pullback of vol_m is not a signed multiple of the a-chart volume form");
  return out;
}

inline nlohmann::json to_json_value(const SuslinSymbol& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries) entries.push_back(to_json_value(e));
  return {{"m", s.m()}, {"entries", entries}};
}

inline SuslinSymbol symbol_from_json(const nlohmann::json& j) {
  SuslinSymbol s;
  for (const auto& e : j.at("entries")) s.entries.push_back(scalar_from_json(e));
  if (j.contains("m") && j.at("m").get<int>() != s.m()) throw std::invalid_argument("symbol JSON: m does not match entries");
  return s;
}

}  // namespace grasslog
