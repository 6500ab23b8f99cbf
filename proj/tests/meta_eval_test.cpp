#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lepor/error.hpp"
#include "lepor/meta_eval.hpp"
#include "oracles/oracles.hpp"

using namespace lepor;

TEST(Pearson, Values) {
  EXPECT_NEAR(pearson(EvalSeries({1, 2, 3, 4}, {5, 7, 9, 11})), 1.0, 1e-15);
  EXPECT_NEAR(pearson(EvalSeries({1, 2, 3}, {-1, -2, -3})), -1.0, 1e-15);
  EXPECT_NEAR(pearson(EvalSeries({1, 2, 3}, {1, 3, 2})), 0.5, 1e-15);
  EXPECT_THROW(pearson(EvalSeries({1, 1, 1}, {1, 2, 3})), UndefinedStatistic);
  EXPECT_THROW(pearson(EvalSeries({1}, {1})), UndefinedStatistic);
}

TEST(Pearson, AffineInvariance) {
  std::mt19937 rng(1);
  std::normal_distribution<double> d;
  std::uniform_real_distribution<double> a(0.1, 10), b(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(8), y(8);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    const double r = pearson(EvalSeries(x, y));
    auto xs = x;
    const double sa = a(rng), sb = b(rng);
    for (auto& v : xs) v = sa * v + sb;
    EXPECT_NEAR(pearson(EvalSeries(xs, y)), r, 1e-12);
  }
}

TEST(EvalSeries, RejectsBadInput) {
  EXPECT_THROW(EvalSeries({1, 2}, {1}), InputError);
  EXPECT_THROW(EvalSeries({1, NAN}, {1, 2}), InputError);
}

TEST(Spearman, Values) {
  EXPECT_DOUBLE_EQ(spearman(EvalSeries({1, 2, 3, 4}, {10, 20, 30, 40})), 1.0);
  EXPECT_DOUBLE_EQ(spearman(EvalSeries({1, 2, 3}, {3, 2, 1})), -1.0);
  EXPECT_DOUBLE_EQ(spearman(RankedSeries({1, 2, 3}, {2, 1, 3})), 0.5);
  EXPECT_THROW(spearman(EvalSeries({1}, {2})), UndefinedStatistic);
}

TEST(Spearman, TiesUseAverageRanks) {
  const EvalSeries s({1, 2, 2, 3}, {1, 2, 3, 4});
  EXPECT_EQ(average_ranks(s.x()), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_NEAR(spearman(s), pearson(EvalSeries({1, 2.5, 2.5, 4}, {1, 2, 3, 4})), 1e-15);
  EXPECT_TRUE(RankedSeries::from_scores(s).has_ties());
}

TEST(Spearman, MonotoneInvariance) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(9), y(9);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    auto xt = x;
    for (auto& v : xt) v = std::exp(3 * v) + v * v * v;
    EXPECT_NEAR(spearman(EvalSeries(xt, y)), spearman(EvalSeries(x, y)), 1e-12);
    EXPECT_NEAR(kendall_tau(EvalSeries(xt, y)), kendall_tau(EvalSeries(x, y)), 1e-12);
  }
}

TEST(Kendall, Values) {
  EXPECT_DOUBLE_EQ(kendall_tau(RankedSeries({1, 2, 3}, {1, 2, 3})), 1.0);
  // Reference order A,B,C; system order A,C,B.
  EXPECT_NEAR(kendall_tau(RankedSeries({1, 2, 3}, {1, 3, 2})), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(kendall_tau(RankedSeries({1, 2, 3, 4}, {4, 3, 2, 1})), -1.0);
  EXPECT_THROW(kendall_tau(RankedSeries({1}, {1})), UndefinedStatistic);
}

TEST(Kendall, TiedPairsStayInDenominator) {
  // Pairs: (0,1) tied in x; (0,2) and (1,2) concordant.
  EXPECT_NEAR(kendall_tau(EvalSeries({1, 1, 2}, {1, 2, 3})), 2.0 / 3.0, 1e-15);
}

TEST(Kendall, MatchesOraclesOnAllSmallPermutations) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<double> identity(perm.begin(), perm.end());
    do {
      const std::vector<double> p(perm.begin(), perm.end());
      const double tau = kendall_tau(RankedSeries(identity, p));
      EXPECT_NEAR(tau, oracle::kendall_from_inversions(perm), 1e-15);
      EXPECT_NEAR(tau, oracle::kendall_pairs(identity, p), 1e-15);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Kendall, TiedRandomMatchesPairCounter) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(7), y(7);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    EXPECT_NEAR(kendall_tau(EvalSeries(x, y)), oracle::kendall_pairs(x, y), 1e-15);
  }
}

TEST(Kappa, Values) {
  EXPECT_DOUBLE_EQ(kappa(1.0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(kappa(0.4, 0.4), 0.0);
  EXPECT_NEAR(kappa(0.7, 0.5), 0.4, 1e-15);
  EXPECT_THROW(kappa(0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(kappa(1.5, 0.2), std::invalid_argument);
}

TEST(Kappa, AgreementHelpers) {
  const std::vector<std::string> a{"x", "x", "y", "y"};
  const std::vector<std::string> b{"x", "y", "y", "y"};
  const Agreement c = cohen_agreement(a, b);
  EXPECT_DOUBLE_EQ(c.p_agree, 0.75);
  EXPECT_DOUBLE_EQ(c.p_chance, 0.5 * 0.25 + 0.5 * 0.75);
  EXPECT_NEAR(kappa(c.p_agree, c.p_chance), 0.5, 1e-15);

  // Three annotators, one missing label; label set {<, =, >}.
  const std::vector<std::vector<std::string>> m{{"<", "<", ">"}, {"=", "", "="}};
  const Agreement pw = pairwise_agreement(m, 3);
  EXPECT_DOUBLE_EQ(pw.p_agree, 2.0 / 4.0);
  EXPECT_DOUBLE_EQ(pw.p_chance, 1.0 / 3.0);
}

TEST(Errors, MaeRmse) {
  EXPECT_EQ(mae(EvalSeries({1, 2}, {1, 2})), 0.0);
  EXPECT_EQ(rmse(EvalSeries({1, 2}, {1, 2})), 0.0);
  EXPECT_DOUBLE_EQ(mae(EvalSeries({1, 2}, {2, 2})), 0.5);
  EXPECT_NEAR(rmse(EvalSeries({1, 2}, {2, 2})), 0.707107, 1e-6);
  EXPECT_NEAR(mae(EvalSeries({1, 2, 3}, {1.5, 2.5, 3.5})), 0.5, 1e-15);
  EXPECT_NEAR(rmse(EvalSeries({1, 2, 3}, {1.5, 2.5, 3.5})), 0.5, 1e-15);
  EXPECT_THROW(mae(EvalSeries({}, {})), InputError);
  EXPECT_THROW(rmse(EvalSeries({}, {})), InputError);

  std::mt19937 rng(12);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(6), y(6);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    const EvalSeries s(x, y);
    EXPECT_GE(rmse(s) + 1e-15, mae(s));
  }
}

TEST(DeltaAvg, Values) {
  const std::vector<double> truth{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(delta_avg(truth, truth, 2), 1.0);
  const std::vector<double> reversed{4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(delta_avg(reversed, truth, 2), -1.0);
  const std::vector<double> flat{2, 2, 2, 2};
  const std::vector<double> any{0.3, 0.9, 0.1, 0.5};
  EXPECT_DOUBLE_EQ(delta_avg(any, flat, 3), 0.0);
  // Five items in three quantiles: sizes 2, 2, 1.
  const std::vector<double> five{5, 4, 3, 2, 1};
  EXPECT_NEAR(delta_avg(five, five, 3), ((4.5) + (3.5)) / 2 - 3.0, 1e-15);
  EXPECT_THROW(delta_avg(truth, truth, 1), std::invalid_argument);
  EXPECT_THROW(delta_avg(truth, truth, 5), std::invalid_argument);
  EXPECT_THROW(delta_avg(truth, five, 2), std::invalid_argument);
}
