#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "gtwed/oracle.hpp"
#include "support.hpp"

namespace gtwed {
namespace {

using oracle::LatticePath;

TEST(EnumeratePaths, EmptyLattice) {
  const auto paths = oracle::enumerate_paths(0, 0);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].empty());
}

TEST(EnumeratePaths, UnitSquare) {
  const auto paths = oracle::enumerate_paths(1, 1);
  const std::set<LatticePath> got(paths.begin(), paths.end());
  const std::set<LatticePath> expected{{EditOp::match},
                                       {EditOp::delete_a, EditOp::delete_b},
                                       {EditOp::delete_b, EditOp::delete_a}};
  EXPECT_EQ(paths.size(), 3u);
  EXPECT_EQ(got, expected);
}

TEST(EnumeratePaths, TwoByTwo) { EXPECT_EQ(oracle::enumerate_paths(2, 2).size(), 13u); }

TEST(EnumeratePaths, CountMatchesDelannoyAndPathsAreValid) {
  for (std::size_t p = 0; p <= oracle::kMaxLength; ++p) {
    for (std::size_t q = 0; q <= oracle::kMaxLength; ++q) {
      const auto paths = oracle::enumerate_paths(p, q);
      ASSERT_EQ(paths.size(), oracle::delannoy(p, q)) << p << "x" << q;
      if (p > 4 || q > 4) continue;
      const std::set<LatticePath> unique(paths.begin(), paths.end());
      EXPECT_EQ(unique.size(), paths.size());
      for (const auto& path : paths) {
        std::size_t i = 0, j = 0;
        for (EditOp op : path) {
          i += op != EditOp::delete_b;
          j += op != EditOp::delete_a;
          ASSERT_LE(i, p);
          ASSERT_LE(j, q);
        }
        EXPECT_EQ(i, p);
        EXPECT_EQ(j, q);
      }
    }
  }
  EXPECT_EQ(oracle::delannoy(8, 8), 265729u);
}

TEST(EnumeratePaths, SizeGuard) {
  EXPECT_THROW(oracle::enumerate_paths(9, 0), ConfigError);
  const auto long_seq = testing::seq({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 8}, {0, 9}});
  EXPECT_THROW(oracle::brute_force_distance(long_seq, long_seq, {1, 1}, testing::abs_model(1)), ConfigError);
}

TEST(BruteForce, IdentityViaAllMatchPath) {
  const auto a = testing::seq({{1, 0}, {-1, 1}, {2, 4}});
  const auto model = testing::abs_model(1.0, Transform::capped(1, 2));
  EXPECT_EQ(oracle::brute_force_distance(a, a, {1, 1}, model), 0.0);
  const LatticePath all_match(3, EditOp::match);
  EXPECT_EQ(oracle::path_cost(all_match, a, a, 1.0, model), 0.0);
}

TEST(BruteForce, EveryPathCostsAtLeastTheMinimum) {
  const auto a = testing::seq({{0, 1}, {2, 2}, {1, 3.5}});
  const auto b = testing::seq({{0, 1}, {3, 2.5}});
  const auto model = testing::abs_model(1.0, Transform::satexp(1, 1));
  const double best = oracle::brute_force_distance(a, b, {0.5, 1}, model);
  EXPECT_GE(best, 0.0);
  std::size_t attaining = 0;
  for (const auto& path : oracle::enumerate_paths(3, 2)) {
    const double c = oracle::path_cost(path, a, b, 0.5, model);
    EXPECT_GE(c, best);
    attaining += c == best;
  }
  EXPECT_GE(attaining, 1u);
}

TEST(BruteForce, SmallInstanceByEnumeration) {
  const auto a = testing::seq({{0, 1}, {2, 2}});
  const auto b = testing::seq({{0, 1}});
  // Five lattice paths from (0,0) to (2,1); the cheapest costs 4.
  const auto paths = oracle::enumerate_paths(2, 1);
  ASSERT_EQ(paths.size(), 5u);
  std::vector<double> costs;
  for (const auto& path : paths) costs.push_back(oracle::path_cost(path, a, b, 1.0, testing::abs_model(1.0)));
  std::sort(costs.begin(), costs.end());
  EXPECT_EQ(costs.front(), 4.0);
  EXPECT_EQ(oracle::brute_force_distance(a, b, {1, 1}, testing::abs_model(1.0)), 4.0);
}

}  // namespace
}  // namespace gtwed
