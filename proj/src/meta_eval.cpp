#include "lepor/meta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "lepor/error.hpp"

namespace lepor {
namespace {

void require_pairs(std::size_t n, const char* what) {
  if (n < 2) throw UndefinedStatistic(std::string(what) + " needs at least two observations");
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

double pearson_raw(std::span<const double> x, std::span<const double> y) {
  require_pairs(x.size(), "correlation");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("correlation undefined: zero variance");
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

bool all_distinct(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace

EvalSeries::EvalSeries(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw InputError("series lengths differ: " + std::to_string(x_.size()) + " vs " +
                     std::to_string(y_.size()));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x_.begin(), x_.end(), finite) || !std::all_of(y_.begin(), y_.end(), finite)) {
    throw InputError("series contains a missing or non-finite value");
  }
}

RankedSeries::RankedSeries(std::vector<double> first, std::vector<double> second, TiePolicy ties)
    : first_(std::move(first)), second_(std::move(second)), ties_(ties) {
  if (first_.size() != second_.size()) {
    throw InputError("rankings must cover the same items");
  }
}

RankedSeries RankedSeries::from_scores(const EvalSeries& s, TiePolicy ties) {
  return RankedSeries(average_ranks(s.x()), average_ranks(s.y()), ties);
}

bool RankedSeries::has_ties() const { return !all_distinct(first_) || !all_distinct(second_); }

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const EvalSeries& s) { return pearson_raw(s.x(), s.y()); }

double spearman(const RankedSeries& s) {
  require_pairs(s.size(), "spearman");
  if (s.has_ties()) return pearson_raw(s.first(), s.second());
  const double n = static_cast<double>(s.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s.first()[i] - s.second()[i];
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

double spearman(const EvalSeries& s) {
  require_pairs(s.size(), "spearman");
  return spearman(RankedSeries::from_scores(s));
}

double kendall_tau(const RankedSeries& s) {
  require_pairs(s.size(), "kendall tau");
  const auto& a = s.first();
  const auto& b = s.second();
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const int prod = sign(a[i] - a[j]) * sign(b[i] - b[j]);
      if (prod > 0) ++concordant;
      if (prod < 0) ++discordant;
    }
  }
  const double n = static_cast<double>(a.size());
  return static_cast<double>(concordant - discordant) / (n * (n - 1.0) / 2.0);
}

double kendall_tau(const EvalSeries& s) { return kendall_tau(RankedSeries(s.x(), s.y())); }

double kappa(double p_agree, double p_chance) {
  if (!(p_agree >= 0.0 && p_agree <= 1.0) || !(p_chance >= 0.0 && p_chance <= 1.0)) {
    throw std::invalid_argument("agreement proportions must lie in [0, 1]");
  }
  if (p_chance == 1.0) throw std::invalid_argument("kappa undefined when P(E) = 1");
  return (p_agree - p_chance) / (1.0 - p_chance);
}

Agreement cohen_agreement(std::span<const std::string> rater_a,
                          std::span<const std::string> rater_b) {
  if (rater_a.size() != rater_b.size() || rater_a.empty()) {
    throw std::invalid_argument("raters must label the same non-empty item list");
  }
  std::unordered_map<std::string, double> freq_a, freq_b;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    if (rater_a[i] == rater_b[i]) ++agree;
    freq_a[rater_a[i]] += 1.0;
    freq_b[rater_b[i]] += 1.0;
  }
  const double n = static_cast<double>(rater_a.size());
  Agreement out;
  out.p_agree = static_cast<double>(agree) / n;
  for (const auto& [label, count] : freq_a) {
    if (auto it = freq_b.find(label); it != freq_b.end()) {
      out.p_chance += (count / n) * (it->second / n);
    }
  }
  return out;
}

Agreement pairwise_agreement(const std::vector<std::vector<std::string>>& labels,
                             std::size_t label_set_size) {
  if (label_set_size == 0) throw std::invalid_argument("label set must be non-empty");
  std::size_t pairs = 0;
  std::size_t agree = 0;
  for (const auto& row : labels) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].empty()) continue;
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if (row[j].empty()) continue;
        ++pairs;
        if (row[i] == row[j]) ++agree;
      }
    }
  }
  if (pairs == 0) throw std::invalid_argument("no item was labelled by two annotators");
  return {static_cast<double>(agree) / static_cast<double>(pairs),
          1.0 / static_cast<double>(label_set_size)};
}

double mae(const EvalSeries& s) {
  if (s.size() == 0) throw InputError("MAE needs a non-empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += std::abs(s.x()[i] - s.y()[i]);
  return sum / static_cast<double>(s.size());
}

double rmse(const EvalSeries& s) {
  if (s.size() == 0) throw InputError("RMSE needs a non-empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s.x()[i] - s.y()[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(s.size()));
}

double delta_avg(std::span<const double> hyp_scores, std::span<const double> true_values,
                 std::size_t n_quantiles) {
  if (hyp_scores.size() != true_values.size()) {
    throw std::invalid_argument("DeltaAvg: score and value lists differ in length");
  }
  const std::size_t n_items = hyp_scores.size();
  if (n_quantiles < 2 || n_quantiles > n_items) {
    throw std::invalid_argument("DeltaAvg: quantile count must lie in [2, item count]");
  }
  std::vector<std::size_t> order(n_items);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return hyp_scores[a] > hyp_scores[b]; });

  const double total = std::accumulate(true_values.begin(), true_values.end(), 0.0);
  const double global_mean = total / static_cast<double>(n_items);

  const std::size_t base = n_items / n_quantiles;
  const std::size_t extra = n_items % n_quantiles;
  double head_sum = 0.0;
  std::size_t head_count = 0;
  std::size_t pos = 0;
  double sum_of_means = 0.0;
  for (std::size_t k = 0; k + 1 < n_quantiles; ++k) {
    const std::size_t size = base + (k < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) head_sum += true_values[order[pos++]];
    head_count += size;
    sum_of_means += head_sum / static_cast<double>(head_count);
  }
  return sum_of_means / static_cast<double>(n_quantiles - 1) - global_mean;
}

}  // namespace lepor
