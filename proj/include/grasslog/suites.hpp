#pragma once

// Named verification suites shared by the command-line tool and the tests.
// Exact suites report the number of failing trials as max_residual with
// tolerance 0; numeric suites report the largest residual against 10^-(P-g).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grasslog/chain.hpp"
#include "grasslog/grassmann.hpp"
#include "grasslog/milnor.hpp"

namespace grasslog {

struct SuiteOptions {
  int m = 2;
  int n = 2;
  std::size_t trials = 100;
  PrecisionPolicy policy{};
  std::uint64_t seed = 1;
  FieldDescriptor field = FieldDescriptor::rational();
  unsigned jobs = 1;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"simplicial", "sign-decomposition", "homotopy", "five-term",
                                              "cocycle",    "volform",            "symbols"};
  return names;
}

inline VerificationReport exact_report(std::string check, std::size_t trials, std::size_t failures,
                                       std::uint64_t seed) {
  VerificationReport r;
  r.check = std::move(check);
  r.trials = trials;
  r.max_residual = std::to_string(failures);
  r.tolerance = "0";
  r.pass = failures == 0;
  r.seed = seed;
  return r;
}

/// Failures among the face identities of one general-position tuple:
/// d_i d_j = d_{j-1} d_i (i < j) on tuples and on orbit points, faces
/// commuting with normalization, and faces of permuted tuples.  Faces of a
/// general-position tuple are in general position, so they skip the check.
inline std::size_t simplicial_failures(const Configuration<ExactScalar>& c) {
  std::size_t bad = 0;
  const int len = static_cast<int>(c.size());
  const auto p = normalize(c);
  for (int j = 0; j < len; ++j) {
    if (!(face(p, j) == OrbitPoint<ExactScalar>::from_general_position(face(c, j)))) ++bad;
  }
  if (len >= 3) {
    for (int j = 1; j < len; ++j) {
      for (int i = 0; i < j; ++i) {
        if (!(face(face(c, j), i) == face(face(c, i), j - 1))) ++bad;
        if (!(face(face(p, j), i) == face(face(p, i), j - 1))) ++bad;
      }
    }
  }
  // d_j(sigma c) = sigma' d_{sigma^-1(j)} c with sigma' the induced bijection
  std::size_t count = 1;
  for (int k = 2; k <= len; ++k) count *= static_cast<std::size_t>(k);
  const Permutation sigma = Permutation::nth(len, count / 2);
  const Permutation inv = sigma.inverse();
  for (int j = 0; j < len; ++j) {
    const int src = inv(j);
    std::vector<int> images;
    for (int i = 0; i < len; ++i) {
      if (i == src) continue;
      const int t = sigma(i);
      images.push_back(t > j ? t - 1 : t);
    }
    const Permutation induced = Permutation::from_images(images);
    if (!(face(act(sigma, c), j) == act(induced, face(c, src)))) ++bad;
  }
  return bad;
}

/// Random tuples of length m + n + 1 in general position.
inline VerificationReport suite_simplicial(const SuiteOptions& o) {
  std::size_t failures = 0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto rng = trial_rng(o.seed, t);
    auto c = random_general_position(o.field, o.m, static_cast<std::size_t>(o.m + o.n + 1), rng);
    if (simplicial_failures(c) != 0) ++failures;
  }
  return exact_report("simplicial identities m=" + std::to_string(o.m) + " n=" + std::to_string(o.n), o.trials,
                      failures, o.seed);
}

/// boundary(alt c) = alt(boundary c) on random rational chains of degree 1..n.
inline VerificationReport suite_sign_decomposition(const SuiteOptions& o) {
  std::size_t failures = 0;
  const int top = std::max(1, o.n);
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto rng = trial_rng(o.seed, t);
    const int degree = 1 + static_cast<int>(t % static_cast<std::size_t>(top));
    auto c = random_chain<RationalCoefficient>(o.field, o.m, static_cast<std::size_t>(degree + 1), 3,
                                               ChainMode::equivariant, rng);
    if (!(boundary(alt(c)) == alt(boundary(c)))) ++failures;
  }
  return exact_report("boundary commutes with alt m=" + std::to_string(o.m), o.trials, failures, o.seed);
}

/// z = boundary(c) for random c of degree 2..n+1; boundary(cone_homotopy(z)) = z.
inline VerificationReport suite_homotopy(const SuiteOptions& o) {
  std::size_t failures = 0;
  const int top = std::max(1, o.n);
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto rng = trial_rng(o.seed, t);
    const int degree = 2 + static_cast<int>(t % static_cast<std::size_t>(top));
    auto c = random_chain<IntegerCoefficient>(o.field, o.m, static_cast<std::size_t>(degree + 1), 3,
                                              ChainMode::equivariant, rng);
    auto z = boundary(c);
    if (!(boundary(cone_homotopy(z)) == z)) ++failures;
  }
  return exact_report("cone homotopy m=" + std::to_string(o.m), o.trials, failures, o.seed);
}

/// The Milnor image of boundary(w), w a random coinvariant chain of degree
/// m+1 over Q^2, is trivial in K^M_2(Q).
inline VerificationReport suite_symbols(const SuiteOptions& o) {
  if (o.m != 2 || o.field.kind() != FieldKind::rational) {
    throw std::invalid_argument("the symbols suite runs over Q with m = 2");
  }
  std::size_t failures = 0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    auto rng = trial_rng(o.seed, t);
    auto w = random_chain<IntegerCoefficient>(o.field, 2, 4, 3, ChainMode::coinvariant, rng);
    if (!km2_reduce(symbol_image(boundary(w))).is_trivial()) ++failures;
  }
  return exact_report("symbol map kills boundaries", o.trials, failures, o.seed);
}

/// One report per m in 1..o.m: the pullback of vol_m through the chart
/// change is +-dlog a_1 ^ ... ^ dlog a_m.  max_residual carries epsilon_m.
inline std::vector<VerificationReport> suite_volform(const SuiteOptions& o) {
  std::vector<VerificationReport> out;
  for (int m = 1; m <= o.m; ++m) {
    VerificationReport r;
    r.check = "volume calibration m=" + std::to_string(m);
    r.trials = 1;
    r.seed = o.seed;
    r.tolerance = "0";
    try {
      const auto cal = volume_calibration(m);
      r.max_residual = "0";
      r.pass = cal.sign == 1 || cal.sign == -1;
      r.check += " epsilon=" + std::to_string(cal.sign);
    } catch (const std::logic_error&) {
      r.max_residual = "1";
      r.pass = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline GrassmannFunction builtin_grassmann_function(int m) {
  if (m == 1) return grassmann_d1();
  if (m == 2) return grassmann_d2();
  throw std::invalid_argument("no built-in Grassmann function for m = " + std::to_string(m));
}

inline std::vector<VerificationReport> suite_five_term(const SuiteOptions& o) {
  const auto f = builtin_grassmann_function(o.m);
  std::vector<VerificationReport> out;
  out.push_back(verify_functional_equation(f, o.trials, o.policy, o.seed, o.jobs));
  out.push_back(verify_skew_symmetry(f, std::min<std::size_t>(o.trials, 20), o.policy, o.seed, o.jobs));
  return out;
}

inline std::vector<VerificationReport> suite_cocycle(const SuiteOptions& o) {
  const auto f = builtin_grassmann_function(o.m);
  return {verify_cocycle(f, o.trials, o.policy, o.seed, o.jobs), verify_base_change(f, o.trials, o.policy, o.seed, o.jobs)};
}

/// Runs a suite by name.
inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& o) {
  if (o.trials == 0) throw std::invalid_argument("trials must be positive");
  if (o.m < 1 || o.n < 0) throw std::invalid_argument("need m >= 1 and n >= 0");
  if (name == "simplicial") return {suite_simplicial(o)};
  if (name == "sign-decomposition") return {suite_sign_decomposition(o)};
  if (name == "homotopy") return {suite_homotopy(o)};
  if (name == "symbols") return {suite_symbols(o)};
  if (name == "volform") return suite_volform(o);
  if (name == "five-term") return suite_five_term(o);
  if (name == "cocycle") return suite_cocycle(o);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace grasslog
