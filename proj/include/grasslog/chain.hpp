#pragma once

// Chains on general-position configurations.
//
// Equivariant mode: basis = configurations (the groups C_n(k^m)).
// Coinvariant mode: basis = canonical orbit representatives (C_n(k^m)_{GL_m}).
// A tuple of length l sits in degree l - 1.  The boundary is the alternating
// sum of the face maps.

#include <gmpxx.h>

#include <map>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "grasslog/configuration.hpp"

namespace grasslog {

enum class ChainMode { equivariant, coinvariant };

using IntegerCoefficient = mpz_class;
using RationalCoefficient = mpq_class;

class GenericVectorExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Coeff>
class Chain {
 public:
  using Basis = Configuration<ExactScalar>;
  using Terms = std::map<Basis, Coeff>;

  Chain(int dim, ChainMode mode) : dim_(dim), mode_(mode) {}

  int dim() const { return dim_; }
  ChainMode mode() const { return mode_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of the (homogeneous) chain, or -1 for the zero chain.
  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

  /// Adds coeff * basis.  In coinvariant mode the basis element is replaced
  /// by its canonical orbit representative.
  void add(const Basis& basis, const Coeff& coeff) {
    if (basis.dim() != dim_) throw DimensionMismatch("chain term in the wrong dimension");
    if (!terms_.empty() && basis.size() != terms_.begin()->first.size()) {
      throw DimensionMismatch("chains are homogeneous in degree");
    }
    if (sgn(coeff) == 0) return;
    if (mode_ == ChainMode::coinvariant) {
      accumulate(OrbitPoint<ExactScalar>::from_general_position(basis).canonical(), coeff);
    } else {
      accumulate(basis, coeff);
    }
  }

  Chain& operator+=(const Chain& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) accumulate(b, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) accumulate(b, -c);
    return *this;
  }
  Chain& operator*=(const Coeff& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }

  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Coeff& s, Chain a) { return a *= s; }

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.dim_ == b.dim_ && a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Chain& o) const {
    if (o.dim_ != dim_ || o.mode_ != mode_) throw DimensionMismatch("chains of different dimension or mode");
    if (!terms_.empty() && !o.terms_.empty() && degree() != o.degree()) {
      throw DimensionMismatch("chains are homogeneous in degree");
    }
  }

  void accumulate(const Basis& b, const Coeff& c) {
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  int dim_;
  ChainMode mode_;
  Terms terms_;
};

template <class Coeff>
Chain<Coeff> boundary(const Chain<Coeff>& c) {
  Chain<Coeff> out(c.dim(), c.mode());
  for (const auto& [basis, coeff] : c.terms()) {
    if (basis.size() < 2) continue;  // degree 0 has no boundary
    for (std::size_t j = 0; j < basis.size(); ++j) {
      out.add(face(basis, static_cast<int>(j)), j % 2 == 0 ? coeff : Coeff(-coeff));
    }
  }
  return out;
}

/// sigma . c applied termwise.
template <class Coeff>
Chain<Coeff> act(const Permutation& sigma, const Chain<Coeff>& c) {
  Chain<Coeff> out(c.dim(), c.mode());
  for (const auto& [basis, coeff] : c.terms()) out.add(act(sigma, basis), coeff);
  return out;
}

/// The alternating projector (1/l!) sum sgn(sigma) sigma over the symmetric
/// group on the l slots of the tuples.  Rational coefficients only.
template <class Coeff>
Chain<Coeff> alt(const Chain<Coeff>& c) {
  if constexpr (!std::is_same_v<Coeff, RationalCoefficient>) {
    throw std::domain_error("alt needs rational coefficients (division by l!)");
  } else {
    Chain<Coeff> out(c.dim(), c.mode());
    if (c.is_zero()) return out;
    const int l = c.degree() + 1;
    const auto perms = Permutation::all(l);
    for (const auto& [basis, coeff] : c.terms()) {
      for (const auto& sigma : perms) {
        out.add(act(sigma, basis), sigma.sign() > 0 ? coeff : Coeff(-coeff));
      }
    }
    mpz_class fact = 1;
    for (int i = 2; i <= l; ++i) fact *= i;
    out *= RationalCoefficient(1, fact);
    return out;
  }
}

/// Converts integer coefficients to rational ones.
inline Chain<RationalCoefficient> to_rational(const Chain<IntegerCoefficient>& c) {
  Chain<RationalCoefficient> out(c.dim(), c.mode());
  for (const auto& [b, k] : c.terms()) out.add(b, RationalCoefficient(k));
  return out;
}

namespace detail {

// Coordinate values in height order 0, 1, -1, 2, -2, ...
inline long height_ordered_value(long index) { return index % 2 == 1 ? (index + 1) / 2 : -(index / 2); }

inline bool extends_general_position(const Vector<ExactScalar>& v, std::span<const Configuration<ExactScalar>> cs) {
  for (const auto& c : cs) {
    std::vector<Vector<ExactScalar>> vs;
    vs.reserve(c.size() + 1);
    vs.push_back(v);
    vs.insert(vs.end(), c.vectors().begin(), c.vectors().end());
    if (!is_general_position(Configuration<ExactScalar>(c.dim(), std::move(vs)))) return false;
  }
  return true;
}

}  // namespace detail

/// First vector v (in a fixed height ordering) such that prepending v to every
/// configuration keeps it in general position.  Over Q and Q(sqrt d) the
/// candidates have integer coordinates; vectors of height h are visited
/// before those of height h+1, and within a height the last coordinate
/// varies slowest, so e_1 comes first.  Over F_p all nonzero vectors are tried.
inline Vector<ExactScalar> find_generic_vector(std::span<const Configuration<ExactScalar>> cs, int m,
                                               const FieldDescriptor& field, long max_height = 64) {
  for (const auto& c : cs) {
    if (c.dim() != m) throw DimensionMismatch("find_generic_vector: configuration in the wrong dimension");
  }
  const long top = field.is_finite() ? (field.parameter() - 1) / 2 + 1 : max_height;
  for (long h = 1; h <= top; ++h) {
    // coordinate index range [0, 2h] covers values 0, +-1, ..., +-h
    const long span_size = 2 * h + 1;
    std::vector<long> digits(static_cast<std::size_t>(m), 0);
    for (;;) {
      bool on_shell = false;
      Vector<ExactScalar> v;
      for (int k = 0; k < m; ++k) {
        long value = detail::height_ordered_value(digits[static_cast<std::size_t>(k)]);
        if (value == h || value == -h) on_shell = true;
        v.push_back(ExactScalar::from_int(field, value));
      }
      bool nonzero = false;
      for (const auto& s : v) nonzero = nonzero || !s.is_zero();
      // For F_p the value h may coincide with -h; the field reduction takes care of it.
      if (on_shell && nonzero && detail::extends_general_position(v, cs)) return v;
      int k = 0;
      while (k < m && ++digits[static_cast<std::size_t>(k)] == span_size) digits[static_cast<std::size_t>(k++)] = 0;
      if (k == m) break;
    }
  }
  throw GenericVectorExhausted("no vector keeps the configurations in general position (searched up to height " +
                               std::to_string(top) + " over " + field.to_string() + ")");
}

/// Cone construction: for a cycle z of positive degree returns w with
/// boundary(w) = z, obtained by prepending one generic vector v to every term
/// (boundary(v, c) = c - (v, boundary c)).
template <class Coeff>
Chain<Coeff> cone_homotopy(const Chain<Coeff>& z, long max_height = 64) {
  if (z.mode() != ChainMode::equivariant) throw std::invalid_argument("cone_homotopy works on equivariant chains");
  Chain<Coeff> w(z.dim(), z.mode());
  if (z.is_zero()) return w;
  if (z.degree() < 1) throw std::invalid_argument("cone_homotopy needs a cycle of positive degree");
  if (!boundary(z).is_zero()) throw std::invalid_argument("cone_homotopy input is not a cycle");
  const FieldDescriptor field = z.terms().begin()->first[0][0].field();
  if (field.is_finite()) throw std::invalid_argument("cone_homotopy needs an infinite field");
  std::vector<Configuration<ExactScalar>> cs;
  for (const auto& [b, c] : z.terms()) cs.push_back(b);
  const Vector<ExactScalar> v = find_generic_vector(cs, z.dim(), field, max_height);
  for (const auto& [b, c] : z.terms()) {
    std::vector<Vector<ExactScalar>> vs;
    vs.push_back(v);
    vs.insert(vs.end(), b.vectors().begin(), b.vectors().end());
    w.add(Configuration<ExactScalar>(b.dim(), std::move(vs)), c);
  }
  return w;
}

/// Random chain: `terms` general-position tuples of the given length with
/// nonzero integer coefficients in [-5, 5].
template <class Coeff, class Rng>
Chain<Coeff> random_chain(const FieldDescriptor& f, int m, std::size_t length, std::size_t terms, ChainMode mode,
                          Rng& rng, long height = 6) {
  Chain<Coeff> c(m, mode);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (std::size_t i = 0; i < terms; ++i) {
    int k = 0;
    while (k == 0) k = coeff(rng);
    c.add(random_general_position(f, m, length, rng, height), Coeff(k));
  }
  return c;
}

}  // namespace grasslog
