#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lepor {

/// Paired observations (x_i, y_i). Throws InputError on unequal lengths or
/// non-finite values.
class EvalSeries {
 public:
  EvalSeries(std::vector<double> x, std::vector<double> y);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

enum class TiePolicy {
  kAverage,  // tied items share the mean of the ranks they span
};

/// Two rankings of the same items (rank values, 1 = first).
class RankedSeries {
 public:
  RankedSeries(std::vector<double> first, std::vector<double> second,
               TiePolicy ties = TiePolicy::kAverage);

  /// Ranks both sides of s (ascending values get ascending ranks).
  static RankedSeries from_scores(const EvalSeries& s, TiePolicy ties = TiePolicy::kAverage);

  const std::vector<double>& first() const { return first_; }
  const std::vector<double>& second() const { return second_; }
  TiePolicy ties() const { return ties_; }
  std::size_t size() const { return first_.size(); }
  bool has_ties() const;

 private:
  std::vector<double> first_;
  std::vector<double> second_;
  TiePolicy ties_;
};

/// 1-based ascending ranks with ties given their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Throws UndefinedStatistic when n < 2 or either side has zero variance.
double pearson(const EvalSeries& s);

/// Closed form 1 - 6 sum d^2 / (n (n^2 - 1)) without ties; Pearson on average
/// ranks otherwise. Throws UndefinedStatistic when n < 2 (or, with ties, when
/// a side is constant).
double spearman(const EvalSeries& s);
double spearman(const RankedSeries& s);

/// (concordant - discordant) / (n (n - 1) / 2). Pairs tied on either side
/// count as neither but stay in the denominator. Throws UndefinedStatistic
/// when n < 2.
double kendall_tau(const RankedSeries& s);
double kendall_tau(const EvalSeries& s);

/// (P(A) - P(E)) / (1 - P(E)). Throws std::invalid_argument for proportions
/// outside [0, 1] or P(E) = 1.
double kappa(double p_agree, double p_chance);

struct Agreement {
  double p_agree = 0.0;
  double p_chance = 0.0;
};

/// Cohen's two-rater agreement: observed agreement and chance agreement from
/// each rater's marginal label distribution.
Agreement cohen_agreement(std::span<const std::string> rater_a, std::span<const std::string> rater_b);

/// Pooled pairwise agreement over a label matrix (rows = items, columns =
/// annotators; empty strings are missing). Every pair of annotators that both
/// labelled an item counts once; chance is uniform over the label set.
Agreement pairwise_agreement(const std::vector<std::vector<std::string>>& labels,
                             std::size_t label_set_size);

/// Throw InputError on an empty series.
double mae(const EvalSeries& s);
double rmse(const EvalSeries& s);

/// Ranking quality against per-item true values. Items are sorted by
/// hyp_scores descending (stable) and cut into n_quantiles contiguous groups,
/// earlier groups taking the remainder. Throws std::invalid_argument on length
/// mismatch or n_quantiles outside [2, item count].
double delta_avg(std::span<const double> hyp_scores, std::span<const double> true_values,
                 std::size_t n_quantiles);

}  // namespace lepor
