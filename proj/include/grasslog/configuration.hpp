#pragma once

// Configurations of vectors in k^m, the orbit spaces G^m_n = E_nG^m / GL_m,
// their face maps and symmetric-group actions, the cross-ratio map on G^2_1
// and the change of coordinates between the two charts of G^m_0.
//
// Conventions:
//   * face(c, j) deletes the j-th vector.
//   * act(sigma, c) moves the vector in slot i to slot sigma(i).
//   * An orbit point is stored through its canonical representative: the
//     unique tuple in the GL_m-orbit whose first m vectors are e_1..e_m.
//     Tuples with at most m vectors are all GL_m-equivalent (the group acts
//     transitively on independent tuples), so their canonical form is
//     (e_1, ..., e_l); these are the extra points that complete the truncated
//     simplicial space in low degrees.

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasslog/exact_fields.hpp"
#include "grasslog/linalg.hpp"
#include "grasslog/permutation.hpp"

namespace grasslog {

class NotGeneralPosition : public std::domain_error {
 public:
  NotGeneralPosition() : std::domain_error("configuration is not in general position") {}
};

template <class S>
class Configuration {
 public:
  Configuration() = default;

  Configuration(int dim, std::vector<Vector<S>> vectors) : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ < 1) throw DimensionMismatch("configuration dimension must be positive");
    if (vectors_.empty()) throw DimensionMismatch("configuration needs at least one vector");
    for (const auto& v : vectors_) {
      if (static_cast<int>(v.size()) != dim_) {
        throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in k^" + std::to_string(dim_));
      }
    }
  }

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  /// Chain degree: a tuple of length l sits in degree l - 1.
  int degree() const { return static_cast<int>(vectors_.size()) - 1; }
  const Vector<S>& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Vector<S>>& vectors() const { return vectors_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  int dim_ = 0;
  std::vector<Vector<S>> vectors_;
};

/// Calls fn(indices) for every increasing k-subset of {0..n-1}.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::span<const std::size_t>)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class S>
S minor_det(const Configuration<S>& c, std::span<const std::size_t> idx) {
  std::vector<Vector<S>> cols;
  cols.reserve(idx.size());
  for (auto i : idx) cols.push_back(c[i]);
  return det(Matrix<S>::from_columns(cols));
}

/// Every min(m, l) of the l vectors are linearly independent.
template <class S>
bool is_general_position(const Configuration<S>& c) {
  const auto m = static_cast<std::size_t>(c.dim());
  if (c.size() <= m) return rank(Matrix<S>::from_columns(c.vectors())) == c.size();
  bool ok = true;
  for_each_subset(c.size(), m, [&](std::span<const std::size_t> idx) {
    if (ok && ScalarTraits<S>::is_zero(minor_det(c, idx))) ok = false;
  });
  return ok;
}

template <class S>
Configuration<S> face(const Configuration<S>& c, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= c.size()) {
    throw std::out_of_range("face index " + std::to_string(j) + " out of range for a tuple of length " +
                            std::to_string(c.size()));
  }
  if (c.size() < 2) throw std::out_of_range("face of a single vector");
  std::vector<Vector<S>> out;
  out.reserve(c.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (static_cast<int>(i) != j) out.push_back(c[i]);
  return Configuration<S>(c.dim(), std::move(out));
}

template <class S>
Configuration<S> act(const Permutation& sigma, const Configuration<S>& c) {
  if (static_cast<std::size_t>(sigma.degree()) != c.size()) {
    throw std::invalid_argument("permutation degree " + std::to_string(sigma.degree()) +
                                " does not match tuple length " + std::to_string(c.size()));
  }
  std::vector<Vector<S>> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[static_cast<std::size_t>(sigma(static_cast<int>(i)))] = c[i];
  return Configuration<S>(c.dim(), std::move(out));
}

/// g . c, the diagonal linear action.
template <class S>
Configuration<S> transform(const Matrix<S>& g, const Configuration<S>& c) {
  std::vector<Vector<S>> out;
  out.reserve(c.size());
  for (const auto& v : c.vectors()) out.push_back(g * v);
  return Configuration<S>(c.dim(), std::move(out));
}

template <class S>
Vector<S> basis_vector(int m, int i, const S& like) {
  Vector<S> e(static_cast<std::size_t>(m), ScalarTraits<S>::zero_like(like));
  e[static_cast<std::size_t>(i)] = ScalarTraits<S>::one_like(like);
  return e;
}

template <class S>
class OrbitPoint;

namespace detail {

template <class S>
Configuration<S> canonical_representative(const Configuration<S>& c) {
  const int m = c.dim();
  const S& like = c[0][0];
  if (c.size() <= static_cast<std::size_t>(m)) {
    std::vector<Vector<S>> frame;
    for (std::size_t i = 0; i < c.size(); ++i) frame.push_back(basis_vector(m, static_cast<int>(i), like));
    return Configuration<S>(m, std::move(frame));
  }
  bool framed = true;
  for (int i = 0; i < m && framed; ++i) framed = c[static_cast<std::size_t>(i)] == basis_vector(m, i, like);
  if (framed) return c;
  std::vector<Vector<S>> first(c.vectors().begin(), c.vectors().begin() + m);
  Matrix<S> g = inverse(Matrix<S>::from_columns(first));
  std::vector<Vector<S>> out;
  out.reserve(c.size());
  for (int i = 0; i < m; ++i) out.push_back(basis_vector(m, i, like));
  for (std::size_t i = static_cast<std::size_t>(m); i < c.size(); ++i) out.push_back(g * c[i]);
  return Configuration<S>(m, std::move(out));
}

}  // namespace detail

/// A point of G^m_n, held as its canonical representative.
template <class S>
class OrbitPoint {
 public:
  const Configuration<S>& canonical() const { return canonical_; }
  int dim() const { return canonical_.dim(); }
  std::size_t size() const { return canonical_.size(); }
  /// n in G^m_n; negative for the completing points with at most m vectors.
  int n() const { return static_cast<int>(canonical_.size()) - dim() - 1; }

  friend bool operator==(const OrbitPoint&, const OrbitPoint&) = default;
  friend auto operator<=>(const OrbitPoint&, const OrbitPoint&) = default;

  // Construction goes through normalize(); this one is for representatives
  // already known to be in general position (faces, permutations).
  static OrbitPoint from_general_position(const Configuration<S>& c) {
    return OrbitPoint(detail::canonical_representative(c));
  }

 private:
  explicit OrbitPoint(Configuration<S> c) : canonical_(std::move(c)) {}
  Configuration<S> canonical_;
};

/// Applies (first m vectors)^-1 to the whole tuple.
template <class S>
OrbitPoint<S> normalize(const Configuration<S>& c) {
  if (!is_general_position(c)) throw NotGeneralPosition();
  return OrbitPoint<S>::from_general_position(c);
}

template <class S>
OrbitPoint<S> face(const OrbitPoint<S>& p, int j) {
  return OrbitPoint<S>::from_general_position(face(p.canonical(), j));
}

template <class S>
OrbitPoint<S> act(const Permutation& sigma, const OrbitPoint<S>& p) {
  return OrbitPoint<S>::from_general_position(act(sigma, p.canonical()));
}

template <class S>
bool orbit_equal(const Configuration<S>& a, const Configuration<S>& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw DimensionMismatch("orbit_equal: configurations of different shape");
  }
  return normalize(a) == normalize(b);
}

/// Cross-ratio of four vectors of k^2 viewed as points of P^1:
///   r = [02][13] / ([03][12]),   [ij] = det(v_i, v_j).
/// For finite points p_i = x_i / y_i this is (p0-p2)(p1-p3) / ((p0-p3)(p1-p2)).
template <class S>
S cross_ratio(const Configuration<S>& c) {
  if (c.dim() != 2 || c.size() != 4) throw DimensionMismatch("cross_ratio needs four vectors in k^2");
  auto bracket = [&](std::size_t i, std::size_t j) { return c[i][0] * c[j][1] - c[j][0] * c[i][1]; };
  S num = bracket(0, 2) * bracket(1, 3);
  S den = bracket(0, 3) * bracket(1, 2);
  if (ScalarTraits<S>::is_zero(num) || ScalarTraits<S>::is_zero(den)) throw NotGeneralPosition();
  return num / den;
}

template <class S>
S cross_ratio(const OrbitPoint<S>& p) {
  return cross_ratio(p.canonical());
}

/// The point [1, x_1, ..., x_m] of P^m - (coordinate hyperplanes) attached to
/// the orbit of (e_1, ..., e_m, sum a_i e_i): the kernel line of the linear
/// map k^{m+1} -> k^m sending the i-th basis vector to the i-th vector of the
/// tuple, scaled so that its 0-th coordinate is 1.
template <class S>
Vector<S> chart_change(std::span<const S> a) {
  if (a.empty()) throw DimensionMismatch("chart_change: empty coordinate tuple");
  for (const auto& ai : a) {
    if (ScalarTraits<S>::is_zero(ai)) throw std::domain_error("chart_change: coordinates must be nonzero");
  }
  const int m = static_cast<int>(a.size());
  std::vector<Vector<S>> cols;
  for (int i = 0; i < m; ++i) cols.push_back(basis_vector(m, i, a[0]));
  cols.emplace_back(a.begin(), a.end());
  auto kernel = nullspace(Matrix<S>::from_columns(cols));
  if (kernel.size() != 1) throw NotGeneralPosition();
  const Vector<S>& t = kernel.front();
  Vector<S> x;
  x.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) x.push_back(t[static_cast<std::size_t>(i)] / t[0]);
  return x;
}

/// Coordinates (a_1..a_m) of a point of G^m_0, read off its canonical form.
template <class S>
Vector<S> orbit_coordinates(const OrbitPoint<S>& p) {
  if (p.n() != 0) throw DimensionMismatch("orbit_coordinates needs a point of G^m_0");
  return p.canonical()[static_cast<std::size_t>(p.dim())];
}

template <class Rng>
Configuration<ExactScalar> random_general_position(const FieldDescriptor& f, int m, std::size_t length, Rng& rng,
                                                   long height = 9, int max_attempts = 100000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Vector<ExactScalar>> vs;
    for (std::size_t i = 0; i < length; ++i) {
      Vector<ExactScalar> v;
      for (int k = 0; k < m; ++k) v.push_back(random_scalar(f, rng, height));
      vs.push_back(std::move(v));
    }
    Configuration<ExactScalar> c(m, std::move(vs));
    if (is_general_position(c)) return c;
  }
  throw std::runtime_error("random_general_position: no general-position sample found");
}

template <class Rng>
Matrix<ExactScalar> random_invertible(const FieldDescriptor& f, int m, Rng& rng, long height = 9) {
  for (;;) {
    Matrix<ExactScalar> g(static_cast<std::size_t>(m), static_cast<std::size_t>(m), ExactScalar::zero(f));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = random_scalar(f, rng, height);
    if (!det(g).is_zero()) return g;
  }
}

inline nlohmann::json to_json_value(const Configuration<ExactScalar>& c) {
  nlohmann::json vectors = nlohmann::json::array();
  for (const auto& v : c.vectors()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& s : v) row.push_back(to_json_value(s));
    vectors.push_back(std::move(row));
  }
  return {{"m", c.dim()}, {"vectors", std::move(vectors)}};
}

inline Configuration<ExactScalar> configuration_from_json(const nlohmann::json& j) {
  const int m = j.at("m").get<int>();
  std::vector<Vector<ExactScalar>> vs;
  for (const auto& row : j.at("vectors")) {
    Vector<ExactScalar> v;
    for (const auto& s : row) v.push_back(scalar_from_json(s));
    vs.push_back(std::move(v));
  }
  if (vs.empty()) throw DimensionMismatch("configuration JSON has no vectors");
  const FieldDescriptor f = vs.front().empty() ? FieldDescriptor::rational() : vs.front().front().field();
  for (const auto& v : vs)
    for (const auto& s : v)
      if (s.field() != f) throw FieldError("configuration JSON mixes fields");
  return Configuration<ExactScalar>(m, std::move(vs));
}

}  // namespace grasslog
