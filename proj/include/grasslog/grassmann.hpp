#pragma once

// Numeric harness for Grassmann logarithm functions: evaluation of D_1 and
// the Grassmann dilogarithm on complex configurations, the (2m+1)-term
// functional equation, skew symmetry, group cochains f^e with their
// coboundary and base change, and the L(2, chi) demo.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "grasslog/configuration.hpp"
#include "grasslog/permutation.hpp"
#include "grasslog/polylog.hpp"

namespace grasslog {

using ComplexVector = Vector<mp::Complex>;
using ComplexMatrix = Matrix<mp::Complex>;
using ComplexConfiguration = Configuration<mp::Complex>;

class ResamplingExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Embedding of Q and Q(sqrt d) into C, with sqrt d = i sqrt|d| for d < 0.
inline mp::Complex to_complex(const ExactScalar& x, Bits bits) {
  const FieldDescriptor& f = x.field();
  if (f.is_finite()) throw FieldError("a prime field does not embed in C");
  Real a = Real::from_mpq(x.a().get_mpq_t(), bits);
  if (f.kind() == FieldKind::rational) return mp::Complex(a, Real(bits));
  const long d = f.parameter();
  Real root = mp::sqrt(Real(d < 0 ? -d : d, bits));
  Real b = Real::from_mpq(x.b().get_mpq_t(), bits) * root;
  return d < 0 ? mp::Complex(a, b) : mp::Complex(a + b, Real(bits));
}

inline Configuration<mp::Complex> to_complex(const Configuration<ExactScalar>& c, Bits bits) {
  std::vector<Vector<mp::Complex>> vs;
  for (const auto& v : c.vectors()) {
    Vector<mp::Complex> w;
    for (const auto& s : v) w.push_back(to_complex(s, bits));
    vs.push_back(std::move(w));
  }
  return Configuration<mp::Complex>(c.dim(), std::move(vs));
}

/// Smallest |minor| over all m-subsets of the tuple.
inline double genericity_margin(const ComplexConfiguration& c) {
  double margin = std::numeric_limits<double>::infinity();
  for_each_subset(c.size(), static_cast<std::size_t>(c.dim()), [&](std::span<const std::size_t> idx) {
    margin = std::min(margin, mp::abs(minor_det(c, idx)).to_double());
  });
  return margin;
}

/// A complex configuration together with its genericity margin.
class NumericConfiguration {
 public:
  explicit NumericConfiguration(ComplexConfiguration c) : config_(std::move(c)), margin_(genericity_margin(config_)) {}

  int m() const { return config_.dim(); }
  const ComplexConfiguration& configuration() const { return config_; }
  double margin() const { return margin_; }

 private:
  ComplexConfiguration config_;
  double margin_;
};

/// Minimum |minor| accepted when sampling.
inline constexpr double kMarginThreshold = 1e-5;

enum class GrassmannDomain { full, generic };

/// A real function on 2m-vector configurations in C^m (points of G^m_{m-1}).
struct GrassmannFunction {
  int m = 0;
  std::string name;
  GrassmannDomain domain = GrassmannDomain::generic;
  std::function<Real(const ComplexConfiguration&, PolylogContext&)> evaluate;

  Real operator()(const ComplexConfiguration& c, PolylogContext& ctx) const {
    if (c.dim() != m || c.size() != static_cast<std::size_t>(2 * m)) {
      throw DimensionMismatch(name + " expects " + std::to_string(2 * m) + " vectors in C^" + std::to_string(m));
    }
    return evaluate(c, ctx);
  }
};

/// m = 1: (u0, u1) -> log|u1 / u0|.
inline GrassmannFunction grassmann_d1() {
  return {1, "D1", GrassmannDomain::generic, [](const ComplexConfiguration& c, PolylogContext& ctx) {
            if (c[0][0].is_zero()) throw NotGeneralPosition();
            return bw_d1(c[1][0] / c[0][0], ctx);
          }};
}

/// D_2 composed with the cross-ratio, without symmetrization.
inline GrassmannFunction grassmann_d2_pullback() {
  return {2, "D2.cross_ratio", GrassmannDomain::generic,
          [](const ComplexConfiguration& c, PolylogContext& ctx) { return bw_d2(cross_ratio(c), ctx); }};
}

/// Alt_4 of D_2 composed with the cross-ratio.
inline GrassmannFunction grassmann_d2() {
  return {2, "D2", GrassmannDomain::generic, [](const ComplexConfiguration& c, PolylogContext& ctx) {
            static const std::vector<Permutation> perms = Permutation::all(4);
            Real acc(ctx.bits());
            for (const auto& sigma : perms) {
              Real v = bw_d2(cross_ratio(act(sigma, c)), ctx);
              acc = sigma.sign() > 0 ? acc + v : acc - v;
            }
            return acc / 24;
          }};
}

/// A point uniform on the disc |z| <= radius.
template <class Rng>
mp::Complex random_disc_point(Rng& rng, double radius, Bits bits) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double t = 2.0 * 3.14159265358979323846 * u(rng);
  return mp::Complex(Real::from_double(r * std::cos(t), bits), Real::from_double(r * std::sin(t), bits));
}

template <class Rng>
ComplexConfiguration random_complex_configuration(int m, std::size_t length, Rng& rng, Bits bits) {
  std::vector<ComplexVector> vs;
  for (std::size_t i = 0; i < length; ++i) {
    ComplexVector v;
    for (int k = 0; k < m; ++k) v.push_back(random_disc_point(rng, 2.0, bits));
    vs.push_back(std::move(v));
  }
  return ComplexConfiguration(m, std::move(vs));
}

template <class Rng>
ComplexMatrix random_complex_matrix(int m, Rng& rng, Bits bits) {
  const auto n = static_cast<std::size_t>(m);
  ComplexMatrix g(n, n, mp::Complex(bits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = random_disc_point(rng, 2.0, bits);
  return g;
}

/// Samples until the margin exceeds the threshold; counts rejections.
template <class Rng>
NumericConfiguration sample_generic(int m, std::size_t length, Rng& rng, Bits bits, std::size_t& rejected,
                                    int budget = 1000) {
  for (int i = 0; i < budget; ++i) {
    NumericConfiguration c(random_complex_configuration(m, length, rng, bits));
    if (c.margin() > kMarginThreshold) return c;
    ++rejected;
  }
  throw ResamplingExhausted("no configuration above the genericity threshold");
}

/// Generator for trial t of a run with the given seed.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

struct VerificationReport {
  std::string check;
  std::size_t trials = 0;
  std::size_t rejected = 0;
  std::string max_residual;
  std::string tolerance;
  bool pass = false;
  std::uint64_t seed = 0;
};

inline nlohmann::json to_json_value(const VerificationReport& r) {
  return {{"check", r.check},           {"trials", r.trials}, {"rejected", r.rejected},
          {"max_residual", r.max_residual}, {"tolerance", r.tolerance}, {"pass", r.pass},
          {"seed", r.seed}};
}

inline std::string format_residual(const Real& r) { return r.to_string(6); }

struct TrialOutcome {
  Real residual;
  std::size_t rejected = 0;
};

/// Runs trial(t) for t < trials on `jobs` threads and merges in trial order.
/// Each trial must build its own PolylogContext.
inline std::vector<TrialOutcome> run_trials(std::size_t trials, unsigned jobs,
                                            const std::function<TrialOutcome(std::size_t)>& trial) {
  std::vector<TrialOutcome> out(trials);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = trial(t);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += jobs) out[t] = trial(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline VerificationReport merge_outcomes(std::string check, const std::vector<TrialOutcome>& outcomes,
                                         const PrecisionPolicy& policy, std::uint64_t seed) {
  const Bits bits = policy.working_bits();
  VerificationReport r;
  r.check = std::move(check);
  r.trials = outcomes.size();
  r.seed = seed;
  Real worst(bits);
  for (const auto& o : outcomes) {
    r.rejected += o.rejected;
    worst = mp::max(worst, o.residual);
  }
  const Real tol = policy.tolerance();
  r.max_residual = format_residual(worst);
  r.tolerance = format_residual(tol);
  r.pass = worst < tol;
  return r;
}

/// |sum_j (-1)^j f(face_j c)| on a (2m+1)-vector configuration.
inline Real functional_equation_residual(const GrassmannFunction& f, const ComplexConfiguration& c,
                                         PolylogContext& ctx) {
  Real acc(ctx.bits());
  for (int j = 0; j < static_cast<int>(c.size()); ++j) {
    Real v = f(face(c, j), ctx);
    acc = j % 2 == 0 ? acc + v : acc - v;
  }
  return mp::abs(acc);
}

inline VerificationReport verify_functional_equation(const GrassmannFunction& f, std::size_t trials,
                                                     const PrecisionPolicy& policy, std::uint64_t seed,
                                                     unsigned jobs = 1) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  auto outcomes = run_trials(trials, jobs, [&](std::size_t t) {
    PolylogContext ctx(policy);
    auto rng = trial_rng(seed, t);
    TrialOutcome o;
    auto c = sample_generic(f.m, static_cast<std::size_t>(2 * f.m + 1), rng, ctx.bits(), o.rejected);
    o.residual = functional_equation_residual(f, c.configuration(), ctx);
    return o;
  });
  return merge_outcomes(std::to_string(2 * f.m + 1) + "-term functional equation (" + f.name + ")", outcomes, policy,
                        seed);
}

/// max over sigma in S_{2m} of |f(sigma c) - sgn(sigma) f(c)|.
inline Real skew_symmetry_residual(const GrassmannFunction& f, const ComplexConfiguration& c, PolylogContext& ctx) {
  const Real base = f(c, ctx);
  Real worst(ctx.bits());
  for (const auto& sigma : Permutation::all(static_cast<int>(c.size()))) {
    Real v = f(act(sigma, c), ctx);
    worst = mp::max(worst, mp::abs(sigma.sign() > 0 ? v - base : v + base));
  }
  return worst;
}

inline VerificationReport verify_skew_symmetry(const GrassmannFunction& f, std::size_t trials,
                                               const PrecisionPolicy& policy, std::uint64_t seed, unsigned jobs = 1) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  auto outcomes = run_trials(trials, jobs, [&](std::size_t t) {
    PolylogContext ctx(policy);
    auto rng = trial_rng(seed, t);
    TrialOutcome o;
    auto c = sample_generic(f.m, static_cast<std::size_t>(2 * f.m), rng, ctx.bits(), o.rejected);
    o.residual = skew_symmetry_residual(f, c.configuration(), ctx);
    return o;
  });
  return merge_outcomes("skew symmetry (" + f.name + ")", outcomes, policy, seed);
}

// ---- group cochains -------------------------------------------------------

/// Inhomogeneous-free (homogeneous) cochain on tuples of group elements.
template <class Arg, class Value, class... Extra>
using Cochain = std::function<Value(std::span<const Arg>, Extra&...)>;

/// (delta f)(g_0..g_n) = sum_i (-1)^i f(g_0..^g_i..g_n).
template <class Arg, class Value, class... Extra>
Cochain<Arg, Value, Extra...> coboundary(Cochain<Arg, Value, Extra...> f) {
  return [f = std::move(f)](std::span<const Arg> g, Extra&... extra) {
    Value acc{};
    std::vector<Arg> sub;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sub.clear();
      for (std::size_t k = 0; k < g.size(); ++k)
        if (k != i) sub.push_back(g[k]);
      Value v = f(std::span<const Arg>(sub), extra...);
      acc = i % 2 == 0 ? acc + v : acc - v;
    }
    return acc;
  };
}

using GroupCochain = Cochain<ComplexMatrix, Real, PolylogContext>;

/// f^e(g_0..g_{2m-1}) = f(g_0 e, ..., g_{2m-1} e).
inline GroupCochain build_cocycle(const GrassmannFunction& f, const ComplexVector& e) {
  if (static_cast<int>(e.size()) != f.m) throw DimensionMismatch("base vector has the wrong length");
  bool nonzero = false;
  for (const auto& x : e) nonzero = nonzero || !x.is_zero();
  if (!nonzero) throw std::invalid_argument("base vector must be nonzero");
  return [f, e](std::span<const ComplexMatrix> g, PolylogContext& ctx) {
    std::vector<ComplexVector> vs;
    for (const auto& gi : g) vs.push_back(gi * e);
    ComplexConfiguration c(f.m, std::move(vs));
    if (!(genericity_margin(c) > 0.0)) throw NotGeneralPosition();
    return f(c, ctx);
  };
}

/// phi_h(f)(g_0..g_n) = f(g_0 h, ..., g_n h).
inline GroupCochain base_change(const ComplexMatrix& h, GroupCochain f) {
  if (ScalarTraits<mp::Complex>::is_zero(det(h))) throw SingularMatrix();
  return [h, f = std::move(f)](std::span<const ComplexMatrix> g, PolylogContext& ctx) {
    std::vector<ComplexMatrix> moved;
    for (const auto& gi : g) moved.push_back(gi * h);
    return f(std::span<const ComplexMatrix>(moved), ctx);
  };
}

/// Group elements g_i such that (g_i e) is generic.
template <class Rng>
std::vector<ComplexMatrix> sample_cocycle_point(int m, std::size_t count, const ComplexVector& e, Rng& rng, Bits bits,
                                                std::size_t& rejected, int budget = 1000) {
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<ComplexMatrix> gs;
    std::vector<ComplexVector> vs;
    for (std::size_t i = 0; i < count; ++i) {
      gs.push_back(random_complex_matrix(m, rng, bits));
      vs.push_back(gs.back() * e);
    }
    bool invertible = true;
    for (const auto& g : gs) invertible = invertible && mp::abs(det(g)).to_double() > kMarginThreshold;
    if (invertible && genericity_margin(ComplexConfiguration(m, vs)) > kMarginThreshold) return gs;
    ++rejected;
  }
  throw ResamplingExhausted("no generic group sample found");
}

inline ComplexVector default_base_vector(int m, Bits bits) {
  ComplexVector e;
  for (int i = 0; i < m; ++i) e.push_back(mp::Complex(i == 0 ? 1 : 0, 0, bits));
  return e;
}

/// |delta f^e| on 2m+1 random group elements per trial, e random per trial.
inline VerificationReport verify_cocycle(const GrassmannFunction& f, std::size_t trials, const PrecisionPolicy& policy,
                                         std::uint64_t seed, unsigned jobs = 1) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  auto outcomes = run_trials(trials, jobs, [&](std::size_t t) {
    PolylogContext ctx(policy);
    auto rng = trial_rng(seed, t);
    TrialOutcome o;
    ComplexVector e;
    for (int i = 0; i < f.m; ++i) e.push_back(random_disc_point(rng, 2.0, ctx.bits()));
    auto delta = coboundary(build_cocycle(f, e));
    auto gs = sample_cocycle_point(f.m, static_cast<std::size_t>(2 * f.m + 1), e, rng, ctx.bits(), o.rejected);
    o.residual = mp::abs(delta(std::span<const ComplexMatrix>(gs), ctx));
    return o;
  });
  return merge_outcomes("cocycle (" + f.name + ")", outcomes, policy, seed);
}

/// |phi_h(f^e) - f^{h e}| on 2m random group elements per trial.
inline VerificationReport verify_base_change(const GrassmannFunction& f, std::size_t trials,
                                             const PrecisionPolicy& policy, std::uint64_t seed, unsigned jobs = 1) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  auto outcomes = run_trials(trials, jobs, [&](std::size_t t) {
    PolylogContext ctx(policy);
    auto rng = trial_rng(seed, t);
    TrialOutcome o;
    ComplexVector e;
    for (int i = 0; i < f.m; ++i) e.push_back(random_disc_point(rng, 2.0, ctx.bits()));
    ComplexMatrix h = random_complex_matrix(f.m, rng, ctx.bits());
    while (mp::abs(det(h)).to_double() <= kMarginThreshold) {
      ++o.rejected;
      h = random_complex_matrix(f.m, rng, ctx.bits());
    }
    const ComplexVector he = h * e;
    auto lhs = base_change(h, build_cocycle(f, e));
    auto rhs = build_cocycle(f, he);
    auto gs = sample_cocycle_point(f.m, static_cast<std::size_t>(2 * f.m), he, rng, ctx.bits(), o.rejected);
    std::span<const ComplexMatrix> g(gs);
    o.residual = mp::abs(lhs(g, ctx) - rhs(g, ctx));
    return o;
  });
  return merge_outcomes("base change (" + f.name + ")", outcomes, policy, seed);
}

// ---- L(2, chi) demo -------------------------------------------------------

struct ZetaDemoReport {
  long discriminant = 0;
  int digits = 0;
  bool control = false;
  Real lhs;       // zeta(2) L(2, chi_d)
  Real rhs;       // (pi^2/6) c_d D_2(x_d)
  Real residual;
  Real tolerance;  // 10^-(P-15)
  bool pass = false;
};

/// zeta(2) L(2, chi_d) against (pi^2/6) c_d D_2(x_d) for d = -3
/// (c = 2/sqrt(3), x = e^{2 pi i/3}) and d = -4 (c = 1, x = i).  With
/// control = true, x_{-3} is replaced by e^{i pi/3}.
inline ZetaDemoReport zeta_demo(long d, const PrecisionPolicy& policy, bool control = false) {
  if (d != -3 && d != -4) throw std::invalid_argument("zeta demo supports discriminants -3 and -4");
  PolylogContext ctx(policy);
  const Bits bits = ctx.bits();
  ZetaDemoReport r;
  r.discriminant = d;
  r.digits = policy.digits;
  r.control = control;
  r.lhs = riemann_zeta(2, ctx) * dirichlet_l(2, d, ctx);
  Real c(1, bits);
  mp::Complex x(0, 1, bits);
  if (d == -3) {
    c = Real(2, bits) / mp::sqrt(Real(3, bits));
    x = mp::Complex::polar(Real(1, bits), ctx.pi() * (control ? 1 : 2) / 3);
  }
  r.rhs = ctx.pi() * ctx.pi() / 6 * c * bw_d2(x, ctx);
  r.residual = mp::abs(r.lhs - r.rhs);
  r.tolerance = mp::pow10_neg(policy.digits - 15, bits);
  r.pass = r.residual < r.tolerance;
  return r;
}

inline nlohmann::json to_json_value(const ZetaDemoReport& r) {
  const int digits = r.digits;
  return {{"discriminant", r.discriminant},
          {"precision_digits", r.digits},
          {"control", r.control},
          {"lhs", r.lhs.to_string(digits)},
          {"rhs", r.rhs.to_string(digits)},
          {"residual", format_residual(r.residual)},
          {"tolerance", format_residual(r.tolerance)},
          {"pass", r.pass}};
}

}  // namespace grasslog
