#pragma once

// Classical polylogarithms Li_m, the single-valued functions D_1, D_2, D_m,
// Hurwitz/Riemann zeta at integers >= 2 and L(2, chi_d) for imaginary
// quadratic characters.  Everything is evaluated at a precision carried by a
// PolylogContext; nothing global except the exact Bernoulli table.

#include <gmpxx.h>

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasslog/mp/complex.hpp"

namespace grasslog {

using mp::Bits;
using mp::Real;

class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decimal working precision P, guard digits g, tolerance 10^-(P-g).
struct PrecisionPolicy {
  int digits = 50;
  int guard = 10;

  PrecisionPolicy() = default;
  PrecisionPolicy(int p, int g = 10) : digits(p), guard(g) {
    if (p < 20) throw std::invalid_argument("precision must be at least 20 digits");
    if (g < 0 || g >= p) throw std::invalid_argument("guard digits must lie in [0, P)");
  }

  /// Arithmetic runs at P + g digits plus a few spare bits.
  Bits working_bits() const { return mp::bits_for_digits(digits + guard) + 16; }
  Real tolerance() const { return mp::pow10_neg(digits - guard, working_bits()); }
  int tolerance_exponent() const { return digits - guard; }
};

/// Exact Bernoulli number with B_1 = -1/2.  Thread-safe, cached.
inline mpq_class bernoulli(unsigned n) {
  static std::mutex mu;
  static std::deque<mpq_class> table{mpq_class(1), mpq_class(-1, 2)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    const unsigned k = static_cast<unsigned>(table.size());
    if (k % 2 == 1) {
      table.emplace_back(0);
      continue;
    }
    // sum_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
    mpq_class s = 0;
    mpz_class binom = 1;  // C(k+1, j)
    for (unsigned j = 0; j < k; ++j) {
      if (j == 1 || j % 2 == 0) s += mpq_class(binom) * table[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    mpq_class b = -s / mpq_class(k + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[n];
}

/// Per-evaluation state: working precision, pi and cached zeta values.
/// Not shared between threads; create one per trial.
class PolylogContext {
 public:
  explicit PolylogContext(PrecisionPolicy policy = {})
      : policy_(policy), bits_(policy.working_bits()), pi_(mp::pi(bits_)) {}

  const PrecisionPolicy& policy() const { return policy_; }
  Bits bits() const { return bits_; }
  const Real& pi() const { return pi_; }
  Real tolerance() const { return policy_.tolerance(); }
  /// Terms below 2^-cutoff are dropped from series.
  long cutoff() const { return static_cast<long>(bits_) + 8; }

  Real real(long v) const { return Real(v, bits_); }
  Real rational(const mpq_class& q) const { return Real::from_mpq(q.get_mpq_t(), bits_); }
  mp::Complex complex(long re, long im = 0) const { return mp::Complex(re, im, bits_); }
  mp::Complex lift(const mp::Complex& z) const {
    return mp::Complex(z.re().with_precision(bits_), z.im().with_precision(bits_));
  }

  /// Hurwitz zeta(s, a) for integer s >= 2 and a > 0, by Euler-Maclaurin.
  Real hurwitz_zeta(int s, const Real& a_in) const {
    if (s < 2) throw std::domain_error("hurwitz_zeta needs s >= 2");
    const Real a = a_in.with_precision(bits_);
    if (a.sign() <= 0) throw std::domain_error("hurwitz_zeta needs a > 0");
    const long n_terms = static_cast<long>(bits_) / 2 + 10;
    const long j_terms = n_terms / 2;
    Real sum(bits_);
    for (long k = 0; k < n_terms; ++k) sum += mp::pow(a + k, -s);
    const Real x = a + n_terms;
    sum += mp::pow(x, 1 - s) / (s - 1);
    sum += mp::pow(x, -s) / 2;
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    mpq_class coeff(1);
    mpz_class fact = 1, poch = 1;
    const Real x2 = x * x;
    Real xp = mp::pow(x, -s - 1);
    for (long j = 1; j <= j_terms; ++j) {
      fact *= (2 * j - 1) * (2 * j);
      if (j == 1) {
        poch = s;
      } else {
        poch *= (s + 2 * j - 3) * (s + 2 * j - 2);
      }
      coeff = bernoulli(static_cast<unsigned>(2 * j)) * mpq_class(poch) / mpq_class(fact);
      sum += rational(coeff) * xp;
      xp = xp / x2;
    }
    return sum;
  }

  /// zeta(s) for integer s != 1; s <= 0 through Bernoulli numbers.
  const Real& zeta(int s) {
    auto it = zeta_.find(s);
    if (it != zeta_.end()) return it->second;
    Real v(bits_);
    if (s == 1) throw std::domain_error("zeta(1) is a pole");
    if (s >= 2) {
      v = hurwitz_zeta(s, real(1));
    } else if (s == 0) {
      v = rational(mpq_class(-1, 2));
    } else {
      const unsigned n = static_cast<unsigned>(-s);
      mpq_class z = bernoulli(n + 1) / mpq_class(n + 1);
      if (n % 2 == 1) z = -z;
      v = rational(z);
    }
    return zeta_.emplace(s, std::move(v)).first->second;
  }

 private:
  PrecisionPolicy policy_;
  Bits bits_;
  Real pi_;
  std::map<int, Real> zeta_;
};

namespace detail {

inline long magnitude_exp(const mp::Complex& z) { return std::max(z.re().exponent2(), z.im().exponent2()); }

inline bool is_real_above_one(const mp::Complex& z) { return z.im().is_zero() && z.re() > 1; }

inline Real factorial(int n, Bits bits) {
  Real f(1, bits);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Bernoulli polynomial B_m(x) = sum C(m,k) B_k x^{m-k}.
inline mp::Complex bernoulli_polynomial(int m, const mp::Complex& x, const PolylogContext& ctx) {
  mp::Complex acc = ctx.complex(0);
  mpz_class binom = 1;
  for (int k = 0; k <= m; ++k) {
    const mpq_class c = mpq_class(binom) * bernoulli(static_cast<unsigned>(k));
    if (c != 0) acc += mp::pow(x, static_cast<unsigned long>(m - k)) * ctx.rational(c);
    binom = binom * (m - k) / (k + 1);
  }
  return acc;
}

inline mp::Complex li_series(int m, const mp::Complex& z, const PolylogContext& ctx) {
  mp::Complex sum = ctx.complex(0), zn = ctx.complex(1);
  for (long n = 1;; ++n) {
    if (n > 1'000'000) throw PrecisionExhausted("Li series did not converge");
    zn = zn * z;
    if (magnitude_exp(zn) < -ctx.cutoff()) break;
    sum += zn / mp::pow(ctx.real(n), m);
  }
  return sum;
}

/// Expansion in mu = log z, valid for |mu| < 2 pi.
inline mp::Complex li_log_series(int m, const mp::Complex& z, PolylogContext& ctx) {
  const mp::Complex mu = mp::log(z);
  mp::Complex sum = ctx.complex(0);
  mp::Complex pk = ctx.complex(1);  // mu^k / k!
  int quiet = 0;
  for (int k = 0;; ++k) {
    if (k > 0) pk = pk * mu / k;
    if (k > 100'000) throw PrecisionExhausted("Li log-series did not converge");
    if (k == m - 1) {
      Real harmonic(0, ctx.bits());
      for (int j = 1; j < m; ++j) harmonic += 1 / ctx.real(j);
      sum += pk * (mp::Complex(harmonic, Real(ctx.bits())) - mp::log(-mu));
      continue;
    }
    const int s = m - k;
    if (s < 0 && (-s) % 2 == 0) continue;  // trivial zeros
    const mp::Complex term = pk * ctx.zeta(s);
    sum += term;
    if (k > m && magnitude_exp(term) < -ctx.cutoff()) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

}  // namespace detail

/// Principal branch of Li_m(z).  On the cut (1, inf) the value is the limit
/// from the lower half plane.  Li_1(1) is a pole.
inline mp::Complex li(int m, const mp::Complex& z_in, PolylogContext& ctx) {
  if (m < 1) throw std::domain_error("li needs m >= 1");
  const mp::Complex z = ctx.lift(z_in);
  if (z.is_zero()) return ctx.complex(0);
  const bool one = z.im().is_zero() && z.re() == 1;
  if (m == 1) {
    if (one) throw std::domain_error("Li_1 has a pole at z = 1");
    mp::Complex w = -mp::log(ctx.complex(1) - z);
    if (detail::is_real_above_one(z)) w = mp::Complex(w.re(), -ctx.pi());
    return w;
  }
  if (one) return mp::Complex(ctx.zeta(m), Real(ctx.bits()));

  const Real r = mp::abs(z);
  mp::Complex w(ctx.bits());
  if (r <= Real::from_double(0.5, ctx.bits())) {
    w = detail::li_series(m, z, ctx);
  } else if (r >= Real(2, ctx.bits())) {
    // Li_m(z) = -(-1)^m Li_m(1/z) - (2 pi i)^m / m! B_m(1/2 + log(-z) / (2 pi i))
    const mp::Complex two_pi_i(Real(ctx.bits()), ctx.pi() * 2);
    const mp::Complex x = mp::log(-z) / two_pi_i + mp::Complex(Real::from_double(0.5, ctx.bits()));
    mp::Complex rhs = mp::pow(two_pi_i, static_cast<unsigned long>(m)) / detail::factorial(m, ctx.bits()) *
                      detail::bernoulli_polynomial(m, x, ctx);
    mp::Complex inv = detail::li_series(m, ctx.complex(1) / z, ctx);
    w = (m % 2 == 0 ? -inv : inv) - rhs;
  } else {
    w = detail::li_log_series(m, z, ctx);
  }
  if (detail::is_real_above_one(z)) {
    // Im Li_m(x - i0) = -pi log^{m-1}(x) / (m-1)!
    Real im = -ctx.pi() * mp::pow(mp::log(z.re()), m - 1) / detail::factorial(m - 1, ctx.bits());
    w = mp::Complex(w.re(), im);
  }
  return w;
}

inline mp::Complex li(int m, const mp::Complex& z, const PrecisionPolicy& policy) {
  PolylogContext ctx(policy);
  return li(m, z, ctx);
}

/// D_1(x) = log|x|.
inline Real bw_d1(const mp::Complex& x, const PolylogContext& ctx) {
  if (x.is_zero()) throw std::domain_error("D_1 is undefined at 0");
  return mp::log(mp::abs(ctx.lift(x)));
}

/// Bloch-Wigner D_2(x) = Im Li_2(x) + log|x| Arg(1 - x); zero at 0 and 1.
inline Real bw_d2(const mp::Complex& x_in, PolylogContext& ctx) {
  const mp::Complex x = ctx.lift(x_in);
  if (x.is_zero() || (x.im().is_zero() && x.re() == 1)) return Real(ctx.bits());
  return li(2, x, ctx).im() + mp::log(mp::abs(x)) * mp::arg(ctx.complex(1) - x);
}

inline Real bw_d2(const mp::Complex& x, const PrecisionPolicy& policy) {
  PolylogContext ctx(policy);
  return bw_d2(x, ctx);
}

/// Re (m odd) or Im (m even) of sum_{k<m} 2^k B_k / k! log^k|x| L_{m-k},
/// where values[j-1] holds a branch of Li_j(x).
inline Real single_valued_combination(int m, const Real& log_abs, const std::vector<mp::Complex>& values,
                                      const PolylogContext& ctx) {
  mp::Complex acc = ctx.complex(0);
  Real lk(1, ctx.bits());  // log^k |x|
  mpz_class kfact = 1;
  for (int k = 0; k < m; ++k) {
    if (k > 0) {
      lk *= log_abs;
      kfact *= k;
    }
    const mpq_class beta = mpq_class(mpz_class(1) << k) * bernoulli(static_cast<unsigned>(k)) / mpq_class(kfact);
    if (beta == 0) continue;
    acc += values[static_cast<std::size_t>(m - k - 1)] * (ctx.rational(beta) * lk);
  }
  return m % 2 == 1 ? acc.re() : acc.im();
}

/// Single-valued polylogarithm D_m.  D_2 coincides with bw_d2; D_1 is
/// Re Li_1(x) = -log|1 - x|.
inline Real bw_dm(int m, const mp::Complex& x_in, PolylogContext& ctx) {
  if (m < 1) throw std::domain_error("bw_dm needs m >= 1");
  const mp::Complex x = ctx.lift(x_in);
  if (x.is_zero()) throw std::domain_error("D_m is undefined at 0");
  if (x.im().is_zero() && x.re() == 1) {
    if (m == 1) throw std::domain_error("D_1 = -log|1 - x| is singular at 1");
    return m % 2 == 1 ? ctx.zeta(m) : Real(ctx.bits());
  }
  std::vector<mp::Complex> values;
  for (int j = 1; j <= m; ++j) values.push_back(li(j, x, ctx));
  return single_valued_combination(m, mp::log(mp::abs(x)), values, ctx);
}

inline Real bw_dm(int m, const mp::Complex& x, const PrecisionPolicy& policy) {
  PolylogContext ctx(policy);
  return bw_dm(m, x, ctx);
}

/// Riemann zeta at an integer s >= 2.
inline Real riemann_zeta(int s, PolylogContext& ctx) {
  if (s < 2) throw std::domain_error("riemann_zeta needs s >= 2");
  return ctx.zeta(s);
}

/// Kronecker symbol (d / n) for n >= 1.
inline int kronecker(long d, long n) {
  if (n < 1) throw std::domain_error("kronecker needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    const long r = ((d % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d / n) for odd n
  long a = ((d % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_fundamental_discriminant(long d) {
  const long r = ((d % 4) + 4) % 4;
  if (r == 1) return d != 1 && detail::is_squarefree(d);
  if (r != 0) return false;
  const long q = d / 4;
  const long rq = ((q % 4) + 4) % 4;
  return (rq == 2 || rq == 3) && detail::is_squarefree(q);
}

/// L(2, chi_d) for a negative fundamental discriminant d with |d| <= 10^4,
/// as |d|^-2 sum_a chi_d(a) zeta(2, a/|d|).
inline Real dirichlet_l(int s, long d, PolylogContext& ctx) {
  if (s != 2) throw std::domain_error("dirichlet_l is implemented for s = 2 only");
  if (d >= 0 || d < -10'000 || !is_fundamental_discriminant(d)) {
    throw std::invalid_argument("not a supported negative fundamental discriminant: " + std::to_string(d));
  }
  const long q = -d;
  Real sum(ctx.bits());
  for (long a = 1; a < q; ++a) {
    const int chi = kronecker(d, a);
    if (chi == 0) continue;
    Real h = ctx.hurwitz_zeta(2, ctx.real(a) / q);
    sum = chi > 0 ? sum + h : sum - h;
  }
  return sum / (q * q);
}

/// Values of Li_1..Li_m on a branch followed by analytic continuation.
struct PolylogBranch {
  mp::Complex z;
  std::vector<mp::Complex> values;  // values[j-1] = Li_j(z)
};

inline PolylogBranch principal_branch(int m, const mp::Complex& z, PolylogContext& ctx) {
  PolylogBranch b{ctx.lift(z), {}};
  for (int j = 1; j <= m; ++j) b.values.push_back(li(j, b.z, ctx));
  return b;
}

/// Taylor step from b.z to target, using z L_k' = L_{k-1}, L_0 = z / (1 - z).
/// The step must stay well inside the disc avoiding 0 and 1.
inline void continue_branch(PolylogBranch& b, const mp::Complex& target_in, const PolylogContext& ctx) {
  const mp::Complex target = ctx.lift(target_in);
  const mp::Complex& z0 = b.z;
  const mp::Complex h = target - z0;
  const double radius = std::min(mp::abs(z0).to_double(), mp::abs(ctx.complex(1) - z0).to_double());
  const double q = mp::abs(h).to_double() / radius;
  if (!(q < 0.5)) throw std::domain_error("continuation step too long for the local radius");
  const int m = static_cast<int>(b.values.size());
  const int n_terms = static_cast<int>(std::ceil(static_cast<double>(ctx.cutoff() + 16) / -std::log2(q))) + 4;

  const mp::Complex inv = ctx.complex(1) / (ctx.complex(1) - z0);
  std::vector<mp::Complex> prev;
  prev.reserve(static_cast<std::size_t>(n_terms + 1));
  prev.push_back(z0 * inv);
  mp::Complex p = inv;
  for (int n = 1; n <= n_terms; ++n) {
    p = p * inv;
    prev.push_back(p);
  }
  for (int k = 1; k <= m; ++k) {
    std::vector<mp::Complex> cur;
    cur.reserve(prev.size());
    cur.push_back(b.values[static_cast<std::size_t>(k - 1)]);
    for (int n = 0; n < n_terms; ++n) {
      cur.push_back((prev[static_cast<std::size_t>(n)] - cur.back() * n) / (z0 * (n + 1)));
    }
    mp::Complex acc = cur.back();
    for (int n = n_terms - 1; n >= 0; --n) acc = acc * h + cur[static_cast<std::size_t>(n)];
    b.values[static_cast<std::size_t>(k - 1)] = acc;
    prev = std::move(cur);
  }
  b.z = target;
}

struct MonodromyReport {
  int m = 0;
  std::size_t steps = 0;
  Real start_value;
  Real end_value;
  Real residual;
  /// Continued Li_1 at the end minus its starting value.
  mp::Complex li1_jump;
};

/// Follows Li_1..Li_m once counterclockwise around center + radius e^{i t},
/// t from pi to 3 pi, and evaluates D_m from the continued branch values.
inline MonodromyReport monodromy_loop(int m, const mp::Complex& center, const Real& radius, std::size_t steps,
                                      PolylogContext& ctx) {
  if (steps < 8) throw std::invalid_argument("monodromy_loop needs at least 8 steps");
  auto point = [&](std::size_t i) {
    const Real t = ctx.pi() + ctx.pi() * 2 * static_cast<long>(i) / static_cast<long>(steps);
    return ctx.lift(center) + mp::Complex::polar(radius.with_precision(ctx.bits()), t);
  };
  PolylogBranch b = principal_branch(m, point(0), ctx);
  const mp::Complex li1_start = b.values[0];
  MonodromyReport r;
  r.m = m;
  r.steps = steps;
  r.start_value = single_valued_combination(m, mp::log(mp::abs(b.z)), b.values, ctx);
  for (std::size_t i = 1; i <= steps; ++i) continue_branch(b, point(i), ctx);
  r.end_value = single_valued_combination(m, mp::log(mp::abs(b.z)), b.values, ctx);
  r.residual = mp::abs(r.end_value - r.start_value);
  r.li1_jump = b.values[0] - li1_start;
  return r;
}

}  // namespace grasslog
