#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lepor/aligner.hpp"
#include "lepor/factors.hpp"
#include "lepor/text_model.hpp"

namespace lepor {

enum class Metric { kLepor, kHlepor, kNlepor };
enum class Strategy { kA, kB };

std::string to_string(Metric m);
std::string to_string(Strategy s);
/// Throws ConfigError on an unknown name.
Metric parse_metric(std::string_view name);
Strategy parse_strategy(std::string_view name);

struct ScoreOptions {
  // Add-one smoothing of n-gram chunk counts for orders >= 2 (nLEPOR only).
  bool smooth_ngrams = false;
};

/// Word-level and (optionally) POS-level alignments of one segment.
struct SegmentAlignments {
  Alignment word;
  std::optional<Alignment> pos;
};

struct SegmentScore {
  std::size_t index = 0;
  FactorValues word;
  std::optional<FactorValues> pos;
  double word_score = 0.0;
  std::optional<double> pos_score;
  double score = 0.0;  // word_score mixed with pos_score when POS is used

  bool degenerate() const { return word.degenerate || (pos && pos->degenerate); }
};

struct FactorMeans {
  double lp = 0.0;
  double npd = 0.0;
  double npos_penal = 0.0;
  double precision = 0.0;  // unigram
  double recall = 0.0;     // unigram
  double hpr = 0.0;
};

struct SystemScore {
  Strategy strategy = Strategy::kA;
  Metric metric = Metric::kLepor;
  bool hybrid = false;
  double score = 0.0;
  FactorMeans word_means;
  std::optional<FactorMeans> pos_means;
};

/// Factor values of one hypothesis against its references, given their
/// alignment. max_order is 1 for LEPOR and hLEPOR and N for nLEPOR.
FactorValues measure_factors(const Sentence& hyp, std::span<const Sentence> refs,
                             const Alignment& alignment, const ParamSet& p, std::size_t max_order,
                             const ScoreOptions& options = {});

/// Composes factor values into a sentence score for the chosen metric.
double compose(const FactorValues& f, Metric metric, const ParamSet& p);

/// (w_hw * word + w_hp * pos) / (w_hw + w_hp).
double hybrid_score(double word, double pos, const ParamSet& p);

/// Whether scoring with p consumes POS input.
inline bool uses_pos(const ParamSet& p) { return p.w_hp > 0.0; }

SegmentAlignments align_segment(const Segment& seg, std::size_t window, bool with_pos);

/// Scores one segment. Throws ConfigError when p needs POS input that the
/// segment lacks.
SegmentScore score_segment(const Segment& seg, const ParamSet& p, Metric metric,
                           const ScoreOptions& options = {});
/// As above with alignments computed by the caller (they depend only on the
/// window, so they can be shared across parameter sets).
SegmentScore score_segment(const Segment& seg, const SegmentAlignments& alignments,
                           const ParamSet& p, Metric metric, const ScoreOptions& options = {});

SegmentScore lepor_sentence(const Segment& seg, const ParamSet& p);
SegmentScore hlepor_sentence(const Segment& seg, const ParamSet& p);
/// Throws ConfigError unless p.ngram_weights has exactly max_order entries.
SegmentScore nlepor_sentence(const Segment& seg, const ParamSet& p, std::size_t max_order,
                             const ScoreOptions& options = {});

std::vector<SegmentScore> score_corpus(const Corpus& corpus, const ParamSet& p, Metric metric,
                                       const ScoreOptions& options = {});

FactorMeans factor_means(std::span<const SegmentScore> scores, bool pos_level);

/// System-level score. Strategy A averages sentence scores; strategy B
/// averages each factor first and composes the means. Throws
/// std::invalid_argument on an empty list.
SystemScore system_score(std::span<const SegmentScore> scores, Metric metric, Strategy strategy,
                         const ParamSet& p);

SystemScore lepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                         const ParamSet& p = {});
SystemScore hlepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                          const ParamSet& p = {});
SystemScore nlepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                          const ParamSet& p = {});

}  // namespace lepor
