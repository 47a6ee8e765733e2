#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "fdp/selection/mrmr.hpp"
#include "oracles.hpp"

namespace sel = fdp::selection;

namespace {

oracle::MiCache cache_of(const fdp::Dataset& d) {
  std::vector<std::vector<int>> cols(d.cols());
  for (std::size_t c = 0; c < d.cols(); ++c) {
    for (std::size_t r = 0; r < d.rows(); ++r) cols[c].push_back(static_cast<int>(*d.value(r, c)));
  }
  return oracle::MiCache(cols, d.labels());
}

}  // namespace

TEST(MrmrRank, CopyOfLabelThenIndependent) {
  fdp::Matrix x(8, 3);
  fdp::Labels y;
  for (std::size_t r = 0; r < 8; ++r) {
    const double l = r < 4 ? 1 : 0;
    x(r, 0) = l;
    x(r, 1) = l;
    x(r, 2) = static_cast<double>(r % 2);
    y.push_back(l > 0 ? 1 : -1);
  }
  const auto d = fdp::Dataset::from_matrix({"x1", "x2", "x3"}, x, y);
  const auto r = sel::mrmr_quotient_rank(d, 2);
  EXPECT_EQ(r.order, (std::vector<std::string>{"x1", "x3"}));
}

TEST(MrmrRank, FullOrderIsPermutation) {
  const auto d = build::discrete(30, 6, 4, 5);
  auto order = sel::mrmr_quotient_rank(d, 6).order;
  std::sort(order.begin(), order.end());
  auto names = d.feature_names();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(order, names);
}

TEST(MrmrRank, SingleFeature) {
  const auto d = build::discrete(10, 1, 3, 1);
  EXPECT_EQ(sel::mrmr_quotient_rank(d, 1).order, std::vector<std::string>{"V1"});
  EXPECT_THROW(sel::mrmr_quotient_rank(d, 2), fdp::Error);
}

TEST(MrmrRank, MatchesExhaustiveGreedy) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t m = 1 + rng() % std::min<std::size_t>(4, n);
    const std::size_t k = 12 + rng() % 40;
    const auto d = build::discrete(k, n, 4, rng());
    const auto want = oracle::greedy_mrmr(cache_of(d), m);
    const auto got = sel::mrmr_quotient_rank(d, m).order;
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t s = 0; s < m; ++s) EXPECT_EQ(got[s], d.feature_names()[want[s]]) << t << ' ' << s;
  }
}
