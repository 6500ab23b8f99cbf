#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lepor/aligner.hpp"
#include "lepor/text_model.hpp"

namespace lepor {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

/// Per-segment factor values.
///
/// `precision`/`recall`/`hpr_by_order` are indexed by n-gram order minus one;
/// index 0 is the unigram (alignment-based) value. `hpr` is the combined
/// precision/recall factor used by the metric: the unigram harmonic mean for
/// LEPOR and hLEPOR, the weighted geometric mean over orders for nLEPOR.
struct FactorValues {
  double lp = 0.0;
  double npd = 0.0;
  double npos_penal = 1.0;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> hpr_by_order;
  double hpr = 0.0;
  bool degenerate = false;
};

/// Symmetric length penalty. Returns 0 for an empty hypothesis.
/// Throws std::invalid_argument when ref_len is 0.
double length_penalty(std::size_t hyp_len, std::size_t ref_len);

/// Mean absolute difference of relative positions over all hypothesis tokens;
/// unaligned tokens contribute 0. An empty hypothesis gives 0.
double npd(const Alignment& a);

/// exp(-npd_value). Throws std::invalid_argument outside [0, 1].
double npos_penal(double npd_value);

/// P = match / hyp_len, R = match / ref_len; a zero length maps its ratio to 0.
PrecisionRecall unigram_pr(std::size_t match, std::size_t hyp_len, std::size_t ref_len);

/// Number of n-gram chunks shared by hyp and ref, each reference chunk
/// consumed at most once (clipped multiset intersection).
std::size_t ngram_matches(const Sentence& hyp, const Sentence& ref, std::size_t n);

/// n-gram chunk precision and recall. Throws std::invalid_argument when n is 0.
PrecisionRecall ngram_pr(const Sentence& hyp, const Sentence& ref, std::size_t n);

/// sum(w) / sum(w_i / v_i). Returns 0 if some v_i with w_i > 0 is 0.
/// Throws std::invalid_argument for mismatched sizes, negative weights, or a
/// non-positive weight sum.
double weighted_harmonic(std::span<const double> values, std::span<const double> weights);

/// Harmonic(alpha * R, beta * P).
double harmonic_pr(const PrecisionRecall& pr, double alpha, double beta);

/// Index of the reference whose length is nearest the hypothesis length;
/// ties go to the shorter, then to the lower index. Empty references are only
/// chosen when every reference is empty. Throws std::invalid_argument on an
/// empty list.
std::size_t effective_reference_index(const Sentence& hyp, std::span<const Sentence> refs);

inline const Sentence& effective_reference(const Sentence& hyp, std::span<const Sentence> refs) {
  return refs[effective_reference_index(hyp, refs)];
}

}  // namespace lepor
