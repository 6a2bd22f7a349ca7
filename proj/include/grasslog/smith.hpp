#pragma once

// Integer Smith normal form (rank and invariant factors only).
//
// Elimination runs on int64 with overflow checks first; if any intermediate
// overflows, the whole reduction is redone with GMP integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace grasslog {

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  long value;
};

struct SmithForm {
  std::size_t rank = 0;
  /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
  std::vector<mpz_class> invariant_factors;

  /// Invariant factors greater than one (the torsion of the cokernel).
  std::vector<mpz_class> torsion() const {
    std::vector<mpz_class> t;
    for (const auto& d : invariant_factors)
      if (d > 1) t.push_back(d);
    return t;
  }
};

namespace detail {

struct Overflow {};

inline long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long checked_sub(long a, long b) {
  long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline long int_abs(long v) {
  if (v == std::numeric_limits<long>::min()) throw Overflow{};
  return v < 0 ? -v : v;
}
inline mpz_class int_abs(const mpz_class& v) { return abs(v); }
inline long int_mul(long a, long b) { return checked_mul(a, b); }
inline mpz_class int_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline long int_sub(long a, long b) { return checked_sub(a, b); }
inline mpz_class int_sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline bool int_is_zero(long v) { return v == 0; }
inline bool int_is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline long int_div(long a, long b) { return a / b; }
inline mpz_class int_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Reduces a dense matrix to diagonal form by unimodular row and column
// operations and returns the nonzero diagonal entries (absolute values).
template <class Int>
std::vector<Int> diagonalize(std::vector<std::vector<Int>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::vector<Int> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero |entry| in the remaining block
    std::size_t pr = rows, pc = cols;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (int_is_zero(a[i][j])) continue;
        Int mag = int_abs(a[i][j]);
        if (pr == rows || mag < best) {
          pr = i;
          pc = j;
          best = mag;
          if (best == 1) break;
        }
      }
      if (pr != rows && best == 1) break;
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      // clear column t below the pivot
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (int_is_zero(a[i][t])) continue;
        Int q = int_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) {
          if (!int_is_zero(a[t][j])) a[i][j] = int_sub(a[i][j], int_mul(q, a[t][j]));
        }
        if (!int_is_zero(a[i][t])) {
          std::swap(a[t], a[i]);  // remainder is a smaller pivot
          clean = false;
        }
      }
      // clear row t right of the pivot
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (int_is_zero(a[t][j])) continue;
        Int q = int_div(a[t][j], a[t][t]);
        for (std::size_t i = t; i < rows; ++i) {
          if (!int_is_zero(a[i][t])) a[i][j] = int_sub(a[i][j], int_mul(q, a[i][t]));
        }
        if (!int_is_zero(a[t][j])) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(int_abs(a[t][t]));
    ++t;
  }
  return diag;
}

// Turns a list of positive diagonal entries into invariant factors with
// d_1 | d_2 | ... by repeated (gcd, lcm) exchanges.
inline std::vector<mpz_class> to_invariant_factors(std::vector<mpz_class> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]);
      mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

}  // namespace detail

inline SmithForm smith_normal_form(std::size_t rows, std::size_t cols, const std::vector<SparseEntry>& entries) {
  SmithForm out;
  if (rows == 0 || cols == 0) return out;
  std::vector<mpz_class> diag;
  try {
    std::vector<std::vector<long>> a(rows, std::vector<long>(cols, 0));
    for (const auto& e : entries) a.at(e.row).at(e.col) = detail::checked_sub(a[e.row][e.col], detail::checked_mul(-1, e.value));
    for (long v : detail::diagonalize(std::move(a))) diag.emplace_back(v);
  } catch (const detail::Overflow&) {
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
    for (const auto& e : entries) a[e.row][e.col] += e.value;
    diag = detail::diagonalize(std::move(a));
  }
  out.rank = diag.size();
  out.invariant_factors = detail::to_invariant_factors(std::move(diag));
  return out;
}

}  // namespace grasslog
