#include "lepor/factors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace lepor {
namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const Sentence& s, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (s.length() < n) return counts;
  const auto& t = s.tokens();
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    ++counts[std::vector<std::string>(t.begin() + static_cast<std::ptrdiff_t>(i),
                                      t.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t chunk_count(std::size_t len, std::size_t n) { return len >= n ? len - n + 1 : 0; }

}  // namespace

double length_penalty(std::size_t hyp_len, std::size_t ref_len) {
  if (ref_len == 0) throw std::invalid_argument("length penalty needs a non-empty reference");
  if (hyp_len == 0) return 0.0;
  const double c = static_cast<double>(hyp_len);
  const double r = static_cast<double>(ref_len);
  if (hyp_len < ref_len) return std::exp(1.0 - r / c);
  if (hyp_len > ref_len) return std::exp(1.0 - c / r);
  return 1.0;
}

double npd(const Alignment& a) {
  if (a.hyp_length == 0) return 0.0;
  const double c = static_cast<double>(a.hyp_length);
  double sum = 0.0;
  for (const auto& p : a.pairs) {
    const double hyp_pos = static_cast<double>(p.hyp_index + 1) / c;
    const double ref_pos =
        static_cast<double>(p.ref_index + 1) / static_cast<double>(a.ref_lengths.at(p.ref_id));
    sum += std::abs(hyp_pos - ref_pos);
  }
  return sum / c;
}

double npos_penal(double npd_value) {
  if (!(npd_value >= 0.0 && npd_value <= 1.0)) {
    throw std::invalid_argument("NPD must lie in [0, 1]");
  }
  return std::exp(-npd_value);
}

PrecisionRecall unigram_pr(std::size_t match, std::size_t hyp_len, std::size_t ref_len) {
  PrecisionRecall pr;
  if (hyp_len > 0) pr.precision = static_cast<double>(match) / static_cast<double>(hyp_len);
  if (ref_len > 0) pr.recall = static_cast<double>(match) / static_cast<double>(ref_len);
  return pr;
}

std::size_t ngram_matches(const Sentence& hyp, const Sentence& ref, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n-gram order must be positive");
  const auto hyp_counts = ngram_counts(hyp, n);
  const auto ref_counts = ngram_counts(ref, n);
  std::size_t matched = 0;
  for (const auto& [gram, count] : hyp_counts) {
    if (auto it = ref_counts.find(gram); it != ref_counts.end()) {
      matched += std::min(count, it->second);
    }
  }
  return matched;
}

PrecisionRecall ngram_pr(const Sentence& hyp, const Sentence& ref, std::size_t n) {
  const std::size_t matched = ngram_matches(hyp, ref, n);
  const std::size_t hyp_chunks = chunk_count(hyp.length(), n);
  const std::size_t ref_chunks = chunk_count(ref.length(), n);
  PrecisionRecall pr;
  if (hyp_chunks > 0) pr.precision = static_cast<double>(matched) / static_cast<double>(hyp_chunks);
  if (ref_chunks > 0) pr.recall = static_cast<double>(matched) / static_cast<double>(ref_chunks);
  return pr;
}

double weighted_harmonic(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("weighted harmonic mean: values and weights differ in length");
  }
  double weight_sum = 0.0;
  double denom = 0.0;
  bool pole = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("weighted harmonic mean: negative weight");
    if (weights[i] == 0.0) continue;
    weight_sum += weights[i];
    if (values[i] <= 0.0) {
      pole = true;
    } else {
      denom += weights[i] / values[i];
    }
  }
  if (!(weight_sum > 0.0)) {
    throw std::invalid_argument("weighted harmonic mean: weights must have a positive sum");
  }
  if (pole) return 0.0;
  return weight_sum / denom;
}

double harmonic_pr(const PrecisionRecall& pr, double alpha, double beta) {
  const double values[] = {pr.recall, pr.precision};
  const double weights[] = {alpha, beta};
  return weighted_harmonic(values, weights);
}

std::size_t effective_reference_index(const Sentence& hyp, std::span<const Sentence> refs) {
  if (refs.empty()) throw std::invalid_argument("no references");
  const bool any_nonempty =
      std::any_of(refs.begin(), refs.end(), [](const Sentence& s) { return !s.empty(); });
  const std::size_t c = hyp.length();
  std::size_t best = refs.size();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const std::size_t len = refs[i].length();
    if (any_nonempty && len == 0) continue;
    if (best == refs.size()) {
      best = i;
      continue;
    }
    const std::size_t best_len = refs[best].length();
    const std::size_t d = len > c ? len - c : c - len;
    const std::size_t best_d = best_len > c ? best_len - c : c - best_len;
    if (d < best_d || (d == best_d && len < best_len)) best = i;
  }
  return best;
}

}  // namespace lepor
