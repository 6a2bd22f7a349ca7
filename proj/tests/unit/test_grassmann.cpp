#include <gtest/gtest.h>

#include <random>

#include "grasslog/grassmann.hpp"
#include "oracles.hpp"

using namespace grasslog;
using mp::Complex;

namespace {

GrassmannFunction constant_one(int m) {
  return {m, "one", GrassmannDomain::full, [](const ComplexConfiguration&, PolylogContext& ctx) { return ctx.real(1); }};
}

Real tol(int k, Bits bits) { return oracle::power_of_ten(-k, bits); }

ComplexConfiguration generic(int m, std::size_t len, std::mt19937_64& rng, Bits bits) {
  std::size_t rejected = 0;
  return sample_generic(m, len, rng, bits, rejected).configuration();
}

}  // namespace

TEST(Embedding, QuadraticFields) {
  const Bits b = 128;
  auto i3 = to_complex(ExactScalar(FieldDescriptor::quadratic(-3), 0, 1), b);
  EXPECT_TRUE(i3.re().is_zero());
  EXPECT_LT(oracle::abs_diff(i3.im(), mp::sqrt(Real(3, b))), tol(35, b));
  auto r5 = to_complex(ExactScalar(FieldDescriptor::quadratic(5), mpq_class(1, 2), mpq_class(1, 2)), b);
  EXPECT_TRUE(r5.im().is_zero());
  EXPECT_THROW(to_complex(ExactScalar(FieldDescriptor::prime(5), 2), b), FieldError);
}

TEST(GrassmannD2, RealConfigurationsGiveZero) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto f = grassmann_d2();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ComplexVector> vs;
    for (int i = 0; i < 4; ++i) vs.push_back({Complex(Real::from_double(u(rng), b), Real(b)), Complex(Real::from_double(u(rng), b), Real(b))});
    EXPECT_LT(mp::abs(f(ComplexConfiguration(2, vs), ctx)), tol(28, b));
  }
}

TEST(GrassmannD2, InvariantAndSkew) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  std::mt19937_64 rng(2);
  const auto f = grassmann_d2();
  for (int trial = 0; trial < 5; ++trial) {
    auto c = generic(2, 4, rng, b);
    const Real v = f(c, ctx);
    auto g = random_complex_matrix(2, rng, b);
    EXPECT_LT(mp::abs(f(transform(g, c), ctx) - v), tol(26, b));
    for (const auto& sigma : Permutation::all(4)) {
      const Real w = f(act(sigma, c), ctx);
      EXPECT_LT(mp::abs(sigma.sign() > 0 ? w - v : w + v), tol(26, b));
    }
  }
}

TEST(GrassmannD2, UnsymmetrizedPullbackAgrees) {
  PolylogContext ctx(PrecisionPolicy(30));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = generic(2, 4, rng, ctx.bits());
    EXPECT_LT(mp::abs(grassmann_d2()(c, ctx) - grassmann_d2_pullback()(c, ctx)), tol(26, ctx.bits()));
  }
}

TEST(GrassmannD2, WrongShapeRejected) {
  PolylogContext ctx(PrecisionPolicy(30));
  std::mt19937_64 rng(4);
  EXPECT_THROW(grassmann_d2()(generic(2, 5, rng, ctx.bits()), ctx), DimensionMismatch);
}

TEST(FunctionalEquation, ThreeTermForD1) {
  PolylogContext ctx(PrecisionPolicy(30));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LT(functional_equation_residual(grassmann_d1(), generic(1, 3, rng, ctx.bits()), ctx), ctx.tolerance());
  }
}

TEST(FunctionalEquation, ConstantResidualIsExactlyOne) {
  PolylogContext ctx(PrecisionPolicy(30));
  std::mt19937_64 rng(6);
  EXPECT_EQ(functional_equation_residual(constant_one(2), generic(2, 5, rng, ctx.bits()), ctx), ctx.real(1));
  auto r = verify_functional_equation(constant_one(2), 5, PrecisionPolicy(30), 1);
  EXPECT_FALSE(r.pass);
}

TEST(FunctionalEquation, D2PassesAtSeveralPrecisions) {
  for (int p : {30, 50}) {
    auto r = verify_functional_equation(grassmann_d2(), 10, PrecisionPolicy(p), 17);
    EXPECT_TRUE(r.pass) << p << " " << r.max_residual;
    EXPECT_EQ(r.trials, 10u);
  }
}

TEST(Cochains, CoboundarySquaredVanishes) {
  Cochain<long, long> f = [](std::span<const long> g) {
    long acc = 7;
    for (std::size_t i = 0; i < g.size(); ++i) acc = acc * 31 + g[i] * static_cast<long>(i + 3) + g[i] * g[i];
    return acc % 1000003;
  };
  auto dd = coboundary(coboundary(f));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> u(-50, 50);
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<long> g(n);
    for (auto& x : g) x = u(rng);
    EXPECT_EQ(dd(std::span<const long>(g)), 0);
  }
}

TEST(Cochains, BuildCocycleIsLeftInvariant) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  std::mt19937_64 rng(8);
  const auto e = default_base_vector(2, b);
  auto fe = build_cocycle(grassmann_d2(), e);
  std::size_t rejected = 0;
  auto gs = sample_cocycle_point(2, 4, e, rng, b, rejected);
  auto k = random_complex_matrix(2, rng, b);
  std::vector<ComplexMatrix> kgs;
  for (const auto& g : gs) kgs.push_back(k * g);
  EXPECT_LT(mp::abs(fe(std::span<const ComplexMatrix>(gs), ctx) - fe(std::span<const ComplexMatrix>(kgs), ctx)),
            tol(26, b));
  EXPECT_THROW(build_cocycle(grassmann_d2(), ComplexVector{Complex(b), Complex(b)}), std::invalid_argument);
  EXPECT_THROW(build_cocycle(grassmann_d2(), default_base_vector(3, b)), DimensionMismatch);
}

TEST(Cochains, BaseChangeIsAnAction) {
  PolylogContext ctx(PrecisionPolicy(30));
  const Bits b = ctx.bits();
  std::mt19937_64 rng(9);
  const auto e = default_base_vector(2, b);
  auto fe = build_cocycle(grassmann_d2(), e);
  const auto h1 = random_complex_matrix(2, rng, b), h2 = random_complex_matrix(2, rng, b);
  std::size_t rejected = 0;
  const auto h12e = h1 * (h2 * e);
  auto gs = sample_cocycle_point(2, 4, h12e, rng, b, rejected);
  std::span<const ComplexMatrix> g(gs);

  const ComplexMatrix id = ComplexMatrix::identity(2, Complex(1, 0, b));
  EXPECT_EQ(base_change(id, fe)(g, ctx), fe(g, ctx));
  const Real composite = base_change(h1 * h2, fe)(g, ctx);
  const Real nested = base_change(h1, base_change(h2, fe))(g, ctx);
  EXPECT_LT(mp::abs(composite - nested), tol(26, b));
  // and both equal f^{h1 h2 e}
  EXPECT_LT(mp::abs(composite - build_cocycle(grassmann_d2(), h12e)(g, ctx)), tol(26, b));

  ComplexMatrix singular(2, 2, Complex(b));
  EXPECT_THROW(base_change(singular, fe), SingularMatrix);
}

TEST(Harnesses, CocycleAndFunctionalEquationAgree) {
  const PrecisionPolicy p(30);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    EXPECT_TRUE(verify_cocycle(grassmann_d2(), 3, p, seed).pass);
    EXPECT_TRUE(verify_functional_equation(grassmann_d2(), 3, p, seed).pass);
    EXPECT_FALSE(verify_cocycle(constant_one(2), 3, p, seed).pass);
    EXPECT_FALSE(verify_functional_equation(constant_one(2), 3, p, seed).pass);
  }
  EXPECT_TRUE(verify_base_change(grassmann_d2(), 3, p, 4).pass);
  EXPECT_TRUE(verify_cocycle(grassmann_d1(), 10, p, 4).pass);
}

TEST(Harnesses, DeterministicAcrossThreadCounts) {
  const PrecisionPolicy p(30);
  auto a = verify_functional_equation(grassmann_d2(), 8, p, 99, 1);
  auto b = verify_functional_equation(grassmann_d2(), 8, p, 99, 4);
  EXPECT_EQ(to_json_value(a).dump(), to_json_value(b).dump());
  auto c = verify_functional_equation(grassmann_d2(), 8, p, 99, 1);
  EXPECT_EQ(to_json_value(a).dump(), to_json_value(c).dump());
  EXPECT_THROW(verify_functional_equation(grassmann_d2(), 0, p, 1), std::invalid_argument);
}

TEST(ZetaDemo, BothDiscriminantsAndControl) {
  for (long d : {-3L, -4L}) {
    auto r = zeta_demo(d, PrecisionPolicy(40));
    EXPECT_TRUE(r.pass) << d;
    EXPECT_LT(r.residual, r.tolerance);
  }
  EXPECT_FALSE(zeta_demo(-3, PrecisionPolicy(40), true).pass);
  EXPECT_THROW(zeta_demo(-7, PrecisionPolicy(40)), std::invalid_argument);
}
