#include <gtest/gtest.h>

#include <random>

#include "grasslog/polylog.hpp"
#include "oracles.hpp"

using namespace grasslog;
using mp::Complex;

namespace {

Complex cx(const char* re, const char* im, Bits bits) {
  return Complex(Real::from_string(re, bits), Real::from_string(im, bits));
}

Complex cx(double re, double im, Bits bits) { return Complex(Real::from_double(re, bits), Real::from_double(im, bits)); }

Real tol(int k, Bits bits) { return oracle::power_of_ten(-k, bits); }

Complex random_point(std::mt19937_64& rng, Bits bits) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (;;) {
    Complex z = cx(u(rng), u(rng), bits);
    const double a = mp::abs(z).to_double(), b = mp::abs(Complex(1, 0, bits) - z).to_double();
    if (a > 0.05 && b > 0.05) return z;
  }
}

}  // namespace

TEST(Policy, Validation) {
  EXPECT_THROW(PrecisionPolicy(19), std::invalid_argument);
  EXPECT_THROW(PrecisionPolicy(30, 30), std::invalid_argument);
  EXPECT_THROW(PrecisionPolicy(30, -1), std::invalid_argument);
  PrecisionPolicy p(40, 10);
  EXPECT_EQ(p.tolerance_exponent(), 30);
  EXPECT_GE(p.working_bits(), mp::bits_for_digits(50));
}

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), mpq_class(-1, 2));
  EXPECT_EQ(bernoulli(2), mpq_class(1, 6));
  EXPECT_EQ(bernoulli(3), 0);
  EXPECT_EQ(bernoulli(4), mpq_class(-1, 30));
  EXPECT_EQ(bernoulli(12), mpq_class(-691, 2730));
  EXPECT_EQ(bernoulli(15), 0);
}

TEST(ComplexParse, Forms) {
  const Bits b = 128;
  auto z = Complex::parse("0.5+1i", b);
  EXPECT_EQ(z.re().to_double(), 0.5);
  EXPECT_EQ(z.im().to_double(), 1.0);
  z = Complex::parse("-2.5e-3-4i", b);
  EXPECT_EQ(z.re().to_double(), -2.5e-3);
  EXPECT_EQ(z.im().to_double(), -4.0);
  z = Complex::parse("3i", b);
  EXPECT_TRUE(z.re().is_zero());
  EXPECT_EQ(z.im().to_double(), 3.0);
  z = Complex::parse("7", b);
  EXPECT_TRUE(z.im().is_zero());
  EXPECT_THROW(Complex::parse("abc", b), std::invalid_argument);
  EXPECT_THROW(Complex::parse("1+", b), std::invalid_argument);
}

TEST(Zeta, AgainstMpfr) {
  PolylogContext ctx(PrecisionPolicy(60));
  const Real pi = ctx.pi();
  EXPECT_LT(oracle::abs_diff(riemann_zeta(2, ctx), pi * pi / 6), tol(60, ctx.bits()));
  EXPECT_LT(oracle::abs_diff(riemann_zeta(2, ctx), oracle::eta2(ctx.bits()) * 2), tol(60, ctx.bits()));
  for (unsigned long s = 3; s <= 8; ++s) {
    EXPECT_LT(oracle::abs_diff(riemann_zeta(static_cast<int>(s), ctx), oracle::zeta_mpfr(s, ctx.bits())),
              tol(60, ctx.bits()));
  }
  EXPECT_THROW(riemann_zeta(1, ctx), std::domain_error);
}

TEST(Li, SpecialValues) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  const Real pi = ctx.pi();
  const Real t = tol(48, b);
  // Li_2(1/2) = pi^2/12 - log^2(2)/2
  const Real l2 = mp::log(Real(2, b));
  EXPECT_LT(oracle::abs_diff(li(2, cx(0.5, 0, b), ctx).re(), pi * pi / 12 - l2 * l2 / 2), t);
  // Li_2(-1) = -pi^2/12
  EXPECT_LT(oracle::abs_diff(li(2, cx(-1, 0, b), ctx), Complex(-(pi * pi / 12), Real(b))), t);
  // Li_m(1) = zeta(m)
  EXPECT_LT(oracle::abs_diff(li(3, cx(1, 0, b), ctx).re(), oracle::zeta_mpfr(3, b)), t);
  // Im Li_2(i) = Catalan
  EXPECT_LT(oracle::abs_diff(li(2, cx(0, 1, b), ctx).im(), oracle::catalan_mpfr(b)), t);
  // Li_1 = -log(1 - z)
  auto z = cx(0.3, 0.9, b);
  EXPECT_LT(oracle::abs_diff(li(1, z, ctx), Complex(0, 0, b) - mp::log(Complex(1, 0, b) - z)), t);
  EXPECT_TRUE(li(2, Complex(0, 0, b), ctx).is_zero());
  EXPECT_THROW(li(1, cx(1, 0, b), ctx), std::domain_error);
  EXPECT_THROW(li(0, z, ctx), std::domain_error);
}

TEST(Li, FrozenReferenceValues) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  for (const auto& f : oracle::kFrozenLi) {
    const Complex want = cx(f.re, f.im, b);
    const Complex got = li(f.m, cx(f.re_z, f.im_z, b), ctx);
    const Real scale = mp::max(Real(1, b), mp::abs(want));
    EXPECT_LT(oracle::abs_diff(got, want) / scale, tol(45, b)) << "m=" << f.m << " z=" << f.re_z << "+" << f.im_z << "i";
  }
}

TEST(Li, InversionRelation) {
  // Li_2(z) + Li_2(1/z) = -pi^2/6 - log^2(-z)/2 off [0, inf)
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto z = random_point(rng, b);
    if (z.im().is_zero()) continue;
    const Complex l = mp::log(Complex(0, 0, b) - z);
    const Complex rhs = Complex(-(ctx.pi() * ctx.pi() / 6), Real(b)) - l * l / 2;
    const Complex lhs = li(2, z, ctx) + li(2, Complex(1, 0, b) / z, ctx);
    EXPECT_LT(oracle::abs_diff(lhs, rhs), tol(45, b));
  }
}

TEST(Li, PrecisionDoublingAgrees) {
  PolylogContext lo(PrecisionPolicy(40)), hi(PrecisionPolicy(80));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto z = random_point(rng, hi.bits());
    for (int m = 2; m <= 4; ++m) {
      const Complex a = li(m, z, lo);
      EXPECT_LT(oracle::abs_diff(Complex(a.re().with_precision(hi.bits()), a.im().with_precision(hi.bits())), li(m, z, hi)),
                tol(36, hi.bits()));
    }
  }
}

TEST(D1, Examples) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  EXPECT_TRUE(bw_d1(cx(-1, 0, b), ctx).is_zero());
  EXPECT_LT(oracle::abs_diff(bw_d1(cx(3, 4, b), ctx), mp::log(Real(5, b))), tol(28, b));
  EXPECT_THROW(bw_d1(Complex(0, 0, b), ctx), std::domain_error);
}

TEST(D2, VanishesOnTheRealLine) {
  PolylogContext ctx(PrecisionPolicy(40));
  const Bits b = ctx.bits();
  for (double x : {-7.0, -1.0, -0.3, 0.0, 0.2, 0.5, 0.99, 1.0, 1.5, 4.0}) {
    EXPECT_LT(mp::abs(bw_d2(cx(x, 0, b), ctx)), tol(38, b)) << x;
  }
}

TEST(D2, RootsOfUnityAgainstClausen) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  const Real pi = ctx.pi();
  for (long k : {1L, 2L, 3L, 5L}) {
    const Real theta = pi * k / 6;
    const Complex z = Complex::polar(Real(1, b), theta);
    EXPECT_LT(oracle::abs_diff(bw_d2(z, ctx), oracle::clausen2(theta, b)), tol(45, b)) << k;
  }
  // D_2(i) = Catalan
  EXPECT_LT(oracle::abs_diff(bw_d2(cx(0, 1, b), ctx), oracle::catalan_series(b)), tol(45, b));
}

TEST(D2, SixFoldSymmetry) {
  PolylogContext ctx(PrecisionPolicy(40));
  const Bits b = ctx.bits();
  const Complex one(1, 0, b);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex x = random_point(rng, b);
    const Real d = bw_d2(x, ctx);
    const Real t = tol(36, b);
    EXPECT_LT(mp::abs(bw_d2(Complex(x.re(), -x.im()), ctx) + d), t);
    EXPECT_LT(mp::abs(bw_d2(one - one / x, ctx) - d), t);
    EXPECT_LT(mp::abs(bw_d2(one / (one - x), ctx) - d), t);
    EXPECT_LT(mp::abs(bw_d2(one / x, ctx) + d), t);
    EXPECT_LT(mp::abs(bw_d2(one - x, ctx) + d), t);
    EXPECT_LT(mp::abs(bw_d2(x / (x - one), ctx) + d), t);
  }
}

TEST(D2, ContinuousAcrossTheCut) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  const Real eps = tol(25, b);
  for (double x : {1.3, 2.0, 5.0, 40.0}) {
    const Complex above(Real::from_double(x, b), eps), below(Real::from_double(x, b), -eps);
    const Complex on = cx(x, 0, b);
    EXPECT_LT(mp::abs(bw_d2(above, ctx) - bw_d2(below, ctx)), tol(23, b));
    EXPECT_LT(mp::abs(bw_d2(above, ctx) - bw_d2(on, ctx)), tol(23, b));
    for (int m = 3; m <= 4; ++m) EXPECT_LT(mp::abs(bw_dm(m, above, ctx) - bw_dm(m, below, ctx)), tol(22, b));
  }
}

TEST(Dm, WeightTwoAgreesWithD2) {
  PolylogContext ctx(PrecisionPolicy(40));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex x = random_point(rng, ctx.bits());
    EXPECT_LT(mp::abs(bw_dm(2, x, ctx) - bw_d2(x, ctx)), tol(36, ctx.bits()));
  }
}

TEST(Dm, WeightOneIsLogAbsOneMinusX) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  const Complex x = cx(0.4, -1.1, b);
  EXPECT_LT(mp::abs(bw_dm(1, x, ctx) + mp::log(mp::abs(Complex(1, 0, b) - x))), tol(28, b));
}

TEST(Dm, WeightThreeFrozenValues) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  for (const auto& f : oracle::kFrozenD3) {
    EXPECT_LT(oracle::abs_diff(bw_dm(3, cx(f.x, "0", b), ctx), Real::from_string(f.value, b)), tol(45, b)) << f.x;
  }
}

TEST(Dm, ValuesAtOne) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  const Complex one(1, 0, b);
  EXPECT_LT(oracle::abs_diff(bw_dm(3, one, ctx), oracle::zeta_mpfr(3, b)), tol(28, b));
  EXPECT_TRUE(bw_dm(4, one, ctx).is_zero());
  EXPECT_THROW(bw_dm(1, one, ctx), std::domain_error);
  EXPECT_THROW(bw_dm(2, Complex(0, 0, b), ctx), std::domain_error);
}

TEST(Monodromy, SingleValuedAroundOne) {
  PolylogContext ctx(PrecisionPolicy(40));
  const Bits b = ctx.bits();
  for (int m = 2; m <= 3; ++m) {
    auto r = monodromy_loop(m, Complex(1, 0, b), Real::from_double(0.5, b), 64, ctx);
    EXPECT_LT(r.residual, ctx.tolerance()) << m;
    EXPECT_LT(mp::abs(r.li1_jump + Complex(Real(b), ctx.pi() * 2)), ctx.tolerance());
  }
}

TEST(Dirichlet, CatalanAndClausen) {
  PolylogContext ctx(PrecisionPolicy(50));
  const Bits b = ctx.bits();
  EXPECT_LT(oracle::abs_diff(dirichlet_l(2, -4, ctx), oracle::catalan_mpfr(b)), tol(48, b));
  const Real cl = oracle::clausen2(ctx.pi() * 2 / 3, b);
  EXPECT_LT(oracle::abs_diff(dirichlet_l(2, -3, ctx), cl * 2 / mp::sqrt(Real(3, b))), tol(48, b));
}

TEST(Dirichlet, Discriminants) {
  EXPECT_TRUE(is_fundamental_discriminant(-3));
  EXPECT_TRUE(is_fundamental_discriminant(-4));
  EXPECT_TRUE(is_fundamental_discriminant(-7));
  EXPECT_TRUE(is_fundamental_discriminant(-8));
  EXPECT_TRUE(is_fundamental_discriminant(5));
  EXPECT_FALSE(is_fundamental_discriminant(-12));
  EXPECT_FALSE(is_fundamental_discriminant(-1));
  EXPECT_FALSE(is_fundamental_discriminant(-16));
  PolylogContext ctx(PrecisionPolicy(30));
  EXPECT_THROW(dirichlet_l(2, -12, ctx), std::invalid_argument);
  EXPECT_THROW(dirichlet_l(2, 5, ctx), std::invalid_argument);
  EXPECT_THROW(dirichlet_l(2, -20003, ctx), std::invalid_argument);
  EXPECT_THROW(dirichlet_l(3, -4, ctx), std::domain_error);
}

TEST(Dirichlet, Kronecker) {
  EXPECT_EQ(kronecker(-4, 1), 1);
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(-4, 5), 1);
  EXPECT_EQ(kronecker(-3, 2), -1);
  EXPECT_EQ(kronecker(-3, 3), 0);
  EXPECT_EQ(kronecker(-3, 7), 1);
  EXPECT_EQ(kronecker(-8, 3), 1);
  EXPECT_EQ(kronecker(-8, 5), -1);
  // multiplicative in n
  for (long d : {-3L, -4L, -7L, -8L})
    for (long a = 1; a < 12; ++a)
      for (long c = 1; c < 12; ++c) EXPECT_EQ(kronecker(d, a * c), kronecker(d, a) * kronecker(d, c));
}
