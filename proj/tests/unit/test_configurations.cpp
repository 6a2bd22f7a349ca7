#include <gtest/gtest.h>

#include <random>

#include "grasslog/configuration.hpp"
#include "grasslog/suites.hpp"

using namespace grasslog;

namespace {

const FieldDescriptor Q = FieldDescriptor::rational();

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(mpq_class(a, b)); }

Configuration<ExactScalar> config2(const std::vector<std::pair<long, long>>& vs) {
  std::vector<Vector<ExactScalar>> out;
  for (auto [x, y] : vs) out.push_back({q(x), q(y)});
  return Configuration<ExactScalar>(2, out);
}

// face_j(sigma c) = sigma' face_{sigma^-1(j)}(c) for the induced bijection sigma'.
bool permuted_face_holds(const Permutation& sigma, const Configuration<ExactScalar>& c, int j) {
  const int len = static_cast<int>(c.size());
  const int src = sigma.inverse()(j);
  std::vector<int> images;
  for (int i = 0; i < len; ++i) {
    if (i == src) continue;
    const int t = sigma(i);
    images.push_back(t > j ? t - 1 : t);
  }
  return face(act(sigma, c), j) == act(Permutation::from_images(images), face(c, src));
}

}  // namespace

TEST(Configuration, GeneralPosition) {
  EXPECT_TRUE(is_general_position(config2({{1, 0}, {0, 1}, {1, 1}})));
  EXPECT_FALSE(is_general_position(config2({{1, 0}, {0, 1}, {2, 0}})));
  EXPECT_FALSE(is_general_position(config2({{1, 2}, {2, 4}})));
  EXPECT_TRUE(is_general_position(config2({{1, 2}})));
  EXPECT_THROW(normalize(config2({{1, 0}, {0, 1}, {0, 3}})), NotGeneralPosition);
  EXPECT_THROW(Configuration<ExactScalar>(2, std::vector<Vector<ExactScalar>>{Vector<ExactScalar>{q(1)}}), DimensionMismatch);
}

TEST(Configuration, FaceAndAct) {
  auto c = config2({{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  EXPECT_EQ(face(c, 1), config2({{1, 0}, {1, 1}, {1, 2}}));
  EXPECT_THROW(face(c, 4), std::out_of_range);
  // slot i moves to sigma(i)
  auto sigma = Permutation::from_images({1, 2, 3, 0});
  EXPECT_EQ(act(sigma, c), config2({{1, 2}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST(Configuration, NormalizeIsOrbitInvariant) {
  std::mt19937_64 rng(21);
  for (const auto& f : {Q, FieldDescriptor::quadratic(-3), FieldDescriptor::prime(13)}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto c = random_general_position(f, 3, 6, rng);
      auto g = random_invertible(f, 3, rng);
      EXPECT_EQ(normalize(transform(g, c)), normalize(c));
      EXPECT_TRUE(orbit_equal(transform(g, c), c));
      const auto canon = normalize(c).canonical();
      for (int i = 0; i < 3; ++i) EXPECT_EQ(canon[static_cast<std::size_t>(i)], basis_vector(3, i, ExactScalar::zero(f)));
    }
  }
}

TEST(Configuration, ShortTuplesNormalizeToFrames) {
  auto p = normalize(config2({{3, 5}}));
  EXPECT_EQ(p.canonical(), config2({{1, 0}}));
  EXPECT_EQ(p.n(), -2);
}

TEST(Configuration, SimplicialIdentitiesRandom) {
  std::mt19937_64 rng(4);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        auto c = random_general_position(Q, m, static_cast<std::size_t>(m + n + 1), rng);
        EXPECT_EQ(simplicial_failures(c), 0u) << "m=" << m << " n=" << n;
      }
    }
  }
}

TEST(Configuration, SymmetricStructureExhaustiveM2) {
  std::mt19937_64 rng(8);
  for (int n = 0; n <= 2; ++n) {
    const int len = 2 + n + 1;
    auto c = random_general_position(Q, 2, static_cast<std::size_t>(len), rng);
    const auto perms = Permutation::all(len);
    for (const auto& sigma : perms) {
      for (const auto& tau : perms) EXPECT_EQ(act(sigma, act(tau, c)), act(sigma * tau, c));
      for (int j = 0; j < len; ++j) EXPECT_TRUE(permuted_face_holds(sigma, c, j));
      // the action descends to orbit points
      EXPECT_EQ(act(sigma, normalize(c)), normalize(act(sigma, c)));
    }
  }
}

TEST(CrossRatio, KnownValueAndInvariance) {
  // points 0, inf, 1, 2 of P^1 as vectors (x, y) ~ x/y
  auto c = config2({{0, 1}, {1, 0}, {1, 1}, {2, 1}});
  // [02][13]/([03][12]) with [ij] = det(v_i, v_j)
  EXPECT_EQ(cross_ratio(c), q(1, 2));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = random_general_position(Q, 2, 4, rng);
    auto g = random_invertible(Q, 2, rng);
    auto r = cross_ratio(d);
    EXPECT_EQ(cross_ratio(transform(g, d)), r);
    EXPECT_EQ(cross_ratio(normalize(d)), r);
    const auto one = ExactScalar::one(Q);
    EXPECT_EQ(cross_ratio(act(Permutation::transposition(4, 0, 1), d)), one / r);
    EXPECT_EQ(cross_ratio(act(Permutation::transposition(4, 1, 2), d)), one - r);
    EXPECT_EQ(cross_ratio(act(Permutation::transposition(4, 2, 3), d)), one / r);
  }
}

TEST(ChartChange, ClosedFormAndKernel) {
  std::mt19937_64 rng(9);
  for (int m = 1; m <= 4; ++m) {
    for (int trial = 0; trial < 20; ++trial) {
      Vector<ExactScalar> a;
      for (int i = 0; i < m; ++i) a.push_back(random_nonzero_scalar(Q, rng));
      auto x = chart_change<ExactScalar>(a);
      ASSERT_EQ(x.size(), a.size());
      for (int i = 0; i + 1 < m; ++i) EXPECT_EQ(x[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i + 1)] / a[0]);
      EXPECT_EQ(x.back(), -(ExactScalar::one(Q) / a[0]));
      // e_1 + sum_{i>=1} x_i v_i = 0 for the tuple (e_1..e_m, a)
      Vector<ExactScalar> s = basis_vector(m, 0, a[0]);
      for (int i = 1; i < m; ++i) {
        auto e = basis_vector(m, i, a[0]);
        for (int k = 0; k < m; ++k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)] + x[static_cast<std::size_t>(i - 1)] * e[static_cast<std::size_t>(k)];
      }
      for (int k = 0; k < m; ++k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)] + x.back() * a[static_cast<std::size_t>(k)];
      for (const auto& v : s) EXPECT_TRUE(v.is_zero());
    }
  }
  std::vector<ExactScalar> bad{q(1), q(0)};
  EXPECT_THROW(chart_change<ExactScalar>(bad), std::domain_error);
}

TEST(Configuration, JsonRoundTrip) {
  std::mt19937_64 rng(6);
  for (const auto& f : {Q, FieldDescriptor::quadratic(-3), FieldDescriptor::prime(7)}) {
    auto c = random_general_position(f, 2, 5, rng);
    EXPECT_EQ(configuration_from_json(to_json_value(c)), c);
  }
  auto j = nlohmann::json::parse(R"({"m": 2, "vectors": [["1/1", "0/1"], ["0/1", "1/1"], ["1/1", "1/1"]]})");
  EXPECT_EQ(configuration_from_json(j), config2({{1, 0}, {0, 1}, {1, 1}}));
}
