#include <gtest/gtest.h>

#include <random>

#include "grasslog/configuration.hpp"
#include "grasslog/linalg.hpp"
#include "grasslog/permutation.hpp"

using namespace grasslog;

namespace {

Matrix<ExactScalar> from_ints(const std::vector<std::vector<long>>& rows, FieldDescriptor f = {}) {
  std::vector<Vector<ExactScalar>> rs;
  for (const auto& r : rows) {
    Vector<ExactScalar> v;
    for (long x : r) v.push_back(ExactScalar::from_int(f, x));
    rs.push_back(v);
  }
  return Matrix<ExactScalar>::from_rows(rs);
}

}  // namespace

TEST(Linalg, DeterminantOfKnownMatrices) {
  EXPECT_EQ(det(from_ints({{2, 1}, {7, 4}})), ExactScalar::from_int({}, 1));
  EXPECT_EQ(det(from_ints({{0, 1, 2}, {3, 4, 5}, {6, 7, 9}})), ExactScalar::from_int({}, -3));
  EXPECT_TRUE(det(from_ints({{1, 2}, {2, 4}})).is_zero());
  // det over F_5 of a matrix with integer determinant 10
  EXPECT_TRUE(det(from_ints({{4, 2}, {1, 3}}, FieldDescriptor::prime(5))).is_zero());
}

TEST(Linalg, SolveAndInverse) {
  std::mt19937_64 rng(3);
  for (const auto& f : {FieldDescriptor::rational(), FieldDescriptor::quadratic(2), FieldDescriptor::prime(11)}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_invertible(f, 3, rng);
      Vector<ExactScalar> b{random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng)};
      auto x = solve(a, b);
      EXPECT_EQ(a * x, b);
      EXPECT_EQ(a * inverse(a), Matrix<ExactScalar>::identity(3, ExactScalar::zero(f)));
      EXPECT_EQ(det(a) * det(inverse(a)), ExactScalar::one(f));
    }
  }
  EXPECT_THROW(inverse(from_ints({{1, 2}, {2, 4}})), SingularMatrix);
}

TEST(Linalg, NullspaceAndRank) {
  auto a = from_ints({{1, 0, 2}, {0, 1, 3}});
  auto ker = nullspace(a);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(a * ker[0], (Vector<ExactScalar>(2, ExactScalar::zero({}))));
  EXPECT_EQ(rank(a), 2u);
  EXPECT_EQ(rank(from_ints({{1, 2}, {2, 4}})), 1u);
}

TEST(Permutation, SignsAndComposition) {
  const auto perms = Permutation::all(4);
  ASSERT_EQ(perms.size(), 24u);
  int even = 0;
  for (const auto& p : perms) even += p.sign() > 0;
  EXPECT_EQ(even, 12);
  for (const auto& a : perms) {
    EXPECT_EQ(a * a.inverse(), Permutation::identity(4));
    for (const auto& b : perms) {
      EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
      for (int i = 0; i < 4; ++i) EXPECT_EQ((a * b)(i), a(b(i)));
    }
  }
  EXPECT_EQ(Permutation::transposition(5, 1, 3).sign(), -1);
  EXPECT_EQ(Permutation::from_images({1, 2, 0}).sign(), 1);
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), std::invalid_argument);
}

TEST(Permutation, RankMatchesEnumeration) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = Permutation::all(n);
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(Permutation::nth(n, k), all[k]);
    EXPECT_THROW(Permutation::nth(n, all.size()), std::out_of_range);
  }
}
