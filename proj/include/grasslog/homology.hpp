#pragma once

// Grassmann homology over a prime field: the homology of the complex of
// GL_m-coinvariants of chains on general-position tuples in F_p^m, computed
// from the integer boundary matrices by Smith normal form.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasslog/chain.hpp"
#include "grasslog/smith.hpp"

namespace grasslog {

class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HomologyLimits {
  int max_dim = 2;
  /// Largest number of canonical orbit points allowed in one degree.
  std::size_t max_basis = 8000;
};

struct DegreeHomology {
  int n = 0;
  std::size_t chain_rank = 0;  // number of orbit points of length n + 1
  std::size_t rank = 0;        // free rank of H_n
  std::vector<mpz_class> torsion;
};

struct HomologyReport {
  FieldDescriptor field;
  int m = 0;
  int max_n = 0;
  std::vector<DegreeHomology> degrees;
  bool boundary_squared_zero = false;
  /// S_m = C_m / image of the boundary from C_{m+1}: free rank and torsion.
  std::size_t suslin_rank = 0;
  std::vector<mpz_class> suslin_torsion;
  /// Free rank of coker(GH_m -> S_m) = C_m / ker(boundary), which is free.
  std::size_t suslin_cokernel_rank = 0;
};

/// All canonical orbit points of general-position tuples of the given
/// length in F_p^m, in lexicographic order.
inline std::vector<Configuration<ExactScalar>> enumerate_orbit_points(const FieldDescriptor& f, int m,
                                                                      std::size_t length, std::size_t max_basis) {
  std::vector<Configuration<ExactScalar>> out;
  const ExactScalar zero = ExactScalar::zero(f);
  std::vector<Vector<ExactScalar>> prefix;
  for (int i = 0; i < m && prefix.size() < length; ++i) prefix.push_back(basis_vector(m, i, zero));
  if (length <= static_cast<std::size_t>(m)) {
    out.emplace_back(m, prefix);
    return out;
  }
  // every nonzero vector of F_p^m
  std::vector<Vector<ExactScalar>> candidates;
  const long p = f.parameter();
  std::vector<long> digits(static_cast<std::size_t>(m), 0);
  for (;;) {
    int k = 0;
    while (k < m && ++digits[static_cast<std::size_t>(k)] == p) digits[static_cast<std::size_t>(k++)] = 0;
    if (k == m) break;
    Vector<ExactScalar> v;
    for (long d : digits) v.push_back(ExactScalar(f, d));
    candidates.push_back(std::move(v));
  }
  // Depth-first extension; the new vector must make every m-subset that
  // contains it independent.
  auto extendable = [&](const std::vector<Vector<ExactScalar>>& vs, const Vector<ExactScalar>& v) {
    std::vector<Vector<ExactScalar>> all = vs;
    all.push_back(v);
    Configuration<ExactScalar> c(m, all);
    bool ok = true;
    for_each_subset(vs.size(), static_cast<std::size_t>(m - 1), [&](std::span<const std::size_t> idx) {
      if (!ok) return;
      std::vector<std::size_t> full(idx.begin(), idx.end());
      full.push_back(vs.size());
      if (minor_det(c, full).is_zero()) ok = false;
    });
    return ok;
  };
  std::vector<Vector<ExactScalar>> current = prefix;
  std::function<void()> rec = [&]() {
    if (current.size() == length) {
      if (out.size() >= max_basis) {
        throw SizeGuardExceeded("more than " + std::to_string(max_basis) + " orbit points of length " +
                                std::to_string(length));
      }
      out.emplace_back(m, current);
      return;
    }
    for (const auto& v : candidates) {
      if (!extendable(current, v)) continue;
      current.push_back(v);
      rec();
      current.pop_back();
    }
  };
  rec();
  return out;
}

/// Entries of the boundary map from length-(l) points to length-(l-1) points.
inline std::vector<SparseEntry> boundary_matrix(const std::vector<Configuration<ExactScalar>>& source,
                                                const std::map<Configuration<ExactScalar>, std::size_t>& target_index) {
  std::vector<SparseEntry> entries;
  for (std::size_t col = 0; col < source.size(); ++col) {
    std::map<std::size_t, long> column;
    const auto& c = source[col];
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto f = OrbitPoint<ExactScalar>::from_general_position(face(c, static_cast<int>(j))).canonical();
      auto it = target_index.find(f);
      if (it == target_index.end()) throw std::logic_error("face of an orbit point missing from the enumeration");
      column[it->second] += j % 2 == 0 ? 1 : -1;
    }
    for (const auto& [row, v] : column)
      if (v != 0) entries.push_back({row, col, v});
  }
  return entries;
}

/// Homology in degrees 0..max_n (degree = tuple length - 1; degree 0 has no
/// augmentation).  Requires a prime field, m <= limits.max_dim and
/// max_n <= m + 2.
inline HomologyReport grassmann_homology(const FieldDescriptor& field, int m, int max_n,
                                         const HomologyLimits& limits = {}) {
  if (!field.is_finite()) throw std::invalid_argument("grassmann_homology needs a prime field");
  if (m < 1 || m > limits.max_dim) {
    throw SizeGuardExceeded("m = " + std::to_string(m) + " outside 1.." + std::to_string(limits.max_dim));
  }
  if (max_n < 0 || max_n > m + 2) {
    throw SizeGuardExceeded("max_n = " + std::to_string(max_n) + " outside 0..m+2 = " + std::to_string(m + 2));
  }
  // degree d uses tuples of length d + 1; we need one degree above max_n and,
  // for the Suslin group S_m, degree m + 1.
  const int top = std::max(max_n + 1, m + 1);
  std::vector<std::vector<Configuration<ExactScalar>>> basis;
  std::vector<std::map<Configuration<ExactScalar>, std::size_t>> index;
  for (int d = 0; d <= top; ++d) {
    basis.push_back(enumerate_orbit_points(field, m, static_cast<std::size_t>(d + 1), limits.max_basis));
    std::map<Configuration<ExactScalar>, std::size_t> idx;
    for (std::size_t i = 0; i < basis.back().size(); ++i) idx.emplace(basis.back()[i], i);
    index.push_back(std::move(idx));
  }
  // boundary[d] : C_d -> C_{d-1} for d >= 1
  std::vector<std::vector<SparseEntry>> bd(static_cast<std::size_t>(top + 1));
  std::vector<SmithForm> snf(static_cast<std::size_t>(top + 1));
  for (int d = 1; d <= top; ++d) {
    bd[static_cast<std::size_t>(d)] = boundary_matrix(basis[static_cast<std::size_t>(d)], index[static_cast<std::size_t>(d - 1)]);
    snf[static_cast<std::size_t>(d)] = smith_normal_form(basis[static_cast<std::size_t>(d - 1)].size(),
                                                         basis[static_cast<std::size_t>(d)].size(),
                                                         bd[static_cast<std::size_t>(d)]);
  }

  HomologyReport report;
  report.field = field;
  report.m = m;
  report.max_n = max_n;

  // d^2 = 0 as a sparse product
  report.boundary_squared_zero = true;
  for (int d = 2; d <= top; ++d) {
    std::map<std::size_t, std::vector<std::pair<std::size_t, long>>> lower_by_col;
    for (const auto& e : bd[static_cast<std::size_t>(d - 1)]) lower_by_col[e.col].emplace_back(e.row, e.value);
    std::map<std::pair<std::size_t, std::size_t>, long> product;
    for (const auto& e : bd[static_cast<std::size_t>(d)]) {
      auto it = lower_by_col.find(e.row);
      if (it == lower_by_col.end()) continue;
      for (const auto& [row, v] : it->second) product[{row, e.col}] += v * e.value;
    }
    for (const auto& [k, v] : product)
      if (v != 0) report.boundary_squared_zero = false;
  }

  for (int d = 0; d <= max_n; ++d) {
    DegreeHomology h;
    h.n = d;
    h.chain_rank = basis[static_cast<std::size_t>(d)].size();
    const std::size_t rank_out = d >= 1 ? snf[static_cast<std::size_t>(d)].rank : 0;
    const std::size_t rank_in = snf[static_cast<std::size_t>(d + 1)].rank;
    h.rank = h.chain_rank - rank_out - rank_in;
    h.torsion = snf[static_cast<std::size_t>(d + 1)].torsion();
    report.degrees.push_back(std::move(h));
  }

  const auto& into_m = snf[static_cast<std::size_t>(m + 1)];
  report.suslin_rank = basis[static_cast<std::size_t>(m)].size() - into_m.rank;
  report.suslin_torsion = into_m.torsion();
  report.suslin_cokernel_rank = snf[static_cast<std::size_t>(m)].rank;
  return report;
}

inline nlohmann::json to_json_value(const HomologyReport& r) {
  auto torsion_json = [](const std::vector<mpz_class>& t) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : t) a.push_back(x.get_si());
    return a;
  };
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& d : r.degrees) {
    degrees.push_back({{"n", d.n}, {"rank", d.rank}, {"torsion", torsion_json(d.torsion)}, {"chain_rank", d.chain_rank}});
  }
  return {{"degrees", degrees},
          {"field", r.field.to_string()},
          {"m", r.m},
          {"boundary_squared_zero", r.boundary_squared_zero},
          {"suslin_group", {{"rank", r.suslin_rank}, {"torsion", torsion_json(r.suslin_torsion)}}},
          {"suslin_cokernel_rank", r.suslin_cokernel_rank}};
}

}  // namespace grasslog
