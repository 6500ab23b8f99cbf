#include "lepor/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lepor/error.hpp"

namespace lepor {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::kLepor:
      return "lepor";
    case Metric::kHlepor:
      return "hlepor";
    case Metric::kNlepor:
      return "nlepor";
  }
  return "unknown";
}

std::string to_string(Strategy s) { return s == Strategy::kA ? "A" : "B"; }

Metric parse_metric(std::string_view name) {
  if (name == "lepor") return Metric::kLepor;
  if (name == "hlepor") return Metric::kHlepor;
  if (name == "nlepor") return Metric::kNlepor;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

Strategy parse_strategy(std::string_view name) {
  if (name == "A" || name == "a") return Strategy::kA;
  if (name == "B" || name == "b") return Strategy::kB;
  throw ConfigError("unknown aggregation strategy '" + std::string(name) + "'");
}

FactorValues measure_factors(const Sentence& hyp, std::span<const Sentence> refs,
                             const Alignment& alignment, const ParamSet& p, std::size_t max_order,
                             const ScoreOptions& options) {
  if (max_order == 0) throw std::invalid_argument("max n-gram order must be positive");
  if (max_order > 1 && p.ngram_weights.size() != max_order) {
    throw ConfigError("ngram weights must have one entry per order");
  }
  FactorValues f;
  f.precision.assign(max_order, 0.0);
  f.recall.assign(max_order, 0.0);
  f.hpr_by_order.assign(max_order, 0.0);

  const Sentence& ref = effective_reference(hyp, refs);
  const std::size_t c = hyp.length();
  const std::size_t r = ref.length();
  if (c == 0 || r == 0) {
    f.lp = 0.0;
    f.npd = 0.0;
    f.npos_penal = 1.0;
    f.hpr = 0.0;
    f.degenerate = true;
    return f;
  }

  f.lp = length_penalty(c, r);
  f.npd = npd(alignment);
  f.npos_penal = npos_penal(f.npd);

  // Alignment may draw matches from several references; recall is measured
  // against the effective reference alone, so clip to its length.
  const std::size_t common = std::min(match_count(alignment), r);
  const PrecisionRecall uni = unigram_pr(common, c, r);
  f.precision[0] = uni.precision;
  f.recall[0] = uni.recall;
  f.hpr_by_order[0] = harmonic_pr(uni, p.alpha, p.beta);

  for (std::size_t n = 2; n <= max_order; ++n) {
    PrecisionRecall pr;
    if (options.smooth_ngrams) {
      const double m = static_cast<double>(ngram_matches(hyp, ref, n)) + 1.0;
      const double hc = static_cast<double>(c >= n ? c - n + 1 : 0) + 1.0;
      const double rc = static_cast<double>(r >= n ? r - n + 1 : 0) + 1.0;
      pr = {m / hc, m / rc};
    } else {
      pr = ngram_pr(hyp, ref, n);
    }
    f.precision[n - 1] = pr.precision;
    f.recall[n - 1] = pr.recall;
    f.hpr_by_order[n - 1] = harmonic_pr(pr, p.alpha, p.beta);
  }

  if (max_order == 1) {
    f.hpr = f.hpr_by_order[0];
  } else {
    double log_sum = 0.0;
    bool zero = false;
    for (std::size_t n = 0; n < max_order; ++n) {
      const double w = p.ngram_weights[n];
      if (w == 0.0) continue;
      if (f.hpr_by_order[n] <= 0.0) {
        zero = true;
        break;
      }
      log_sum += w * std::log(f.hpr_by_order[n]);
    }
    f.hpr = zero ? 0.0 : std::min(1.0, std::exp(log_sum));
  }
  return f;
}

double compose(const FactorValues& f, Metric metric, const ParamSet& p) {
  if (f.degenerate) return 0.0;
  if (metric == Metric::kHlepor) {
    const double values[] = {f.lp, f.npos_penal, f.hpr};
    const double weights[] = {p.w_lp, p.w_npos, p.w_hpr};
    return weighted_harmonic(values, weights);
  }
  return f.lp * f.npos_penal * f.hpr;
}

double hybrid_score(double word, double pos, const ParamSet& p) {
  if (p.w_hp == 0.0) return word;
  const double total = p.w_hw + p.w_hp;
  if (!(total > 0.0)) throw ConfigError("w_hw+w_hp must be positive");
  return (p.w_hw * word + p.w_hp * pos) / total;
}

SegmentAlignments align_segment(const Segment& seg, std::size_t window, bool with_pos) {
  SegmentAlignments out{align(seg.hypothesis(), seg.references(), window), std::nullopt};
  if (with_pos) {
    if (!seg.has_pos()) throw ConfigError("w_hp > 0 requires POS input for every segment");
    out.pos = align(seg.pos()->hypothesis, seg.pos()->references, window);
  }
  return out;
}

SegmentScore score_segment(const Segment& seg, const SegmentAlignments& alignments,
                           const ParamSet& p, Metric metric, const ScoreOptions& options) {
  const std::size_t order = metric == Metric::kNlepor ? p.max_order() : 1;
  SegmentScore s;
  s.word = measure_factors(seg.hypothesis(), seg.references(), alignments.word, p, order, options);
  s.word_score = compose(s.word, metric, p);
  s.score = s.word_score;
  if (uses_pos(p)) {
    if (!seg.has_pos() || !alignments.pos) {
      throw ConfigError("w_hp > 0 requires POS input for every segment");
    }
    s.pos = measure_factors(seg.pos()->hypothesis, seg.pos()->references, *alignments.pos, p, order,
                            options);
    s.pos_score = compose(*s.pos, metric, p);
    s.score = hybrid_score(s.word_score, *s.pos_score, p);
  }
  return s;
}

SegmentScore score_segment(const Segment& seg, const ParamSet& p, Metric metric,
                           const ScoreOptions& options) {
  return score_segment(seg, align_segment(seg, p.context_window, uses_pos(p)), p, metric, options);
}

SegmentScore lepor_sentence(const Segment& seg, const ParamSet& p) {
  return score_segment(seg, p, Metric::kLepor);
}

SegmentScore hlepor_sentence(const Segment& seg, const ParamSet& p) {
  return score_segment(seg, p, Metric::kHlepor);
}

SegmentScore nlepor_sentence(const Segment& seg, const ParamSet& p, std::size_t max_order,
                             const ScoreOptions& options) {
  if (max_order == 0 || p.ngram_weights.size() != max_order) {
    throw ConfigError("ngram weights must have one entry per order");
  }
  return score_segment(seg, p, Metric::kNlepor, options);
}

std::vector<SegmentScore> score_corpus(const Corpus& corpus, const ParamSet& p, Metric metric,
                                       const ScoreOptions& options) {
  std::vector<SegmentScore> out;
  out.reserve(corpus.segment_count());
  for (std::size_t i = 0; i < corpus.segments.size(); ++i) {
    out.push_back(score_segment(corpus.segments[i], p, metric, options));
    out.back().index = i;
  }
  return out;
}

FactorMeans factor_means(std::span<const SegmentScore> scores, bool pos_level) {
  FactorMeans m;
  if (scores.empty()) return m;
  for (const auto& s : scores) {
    const FactorValues& f = pos_level ? s.pos.value() : s.word;
    m.lp += f.lp;
    m.npd += f.npd;
    m.npos_penal += f.npos_penal;
    m.precision += f.precision.empty() ? 0.0 : f.precision[0];
    m.recall += f.recall.empty() ? 0.0 : f.recall[0];
    m.hpr += f.hpr;
  }
  const double n = static_cast<double>(scores.size());
  m.lp /= n;
  m.npd /= n;
  m.npos_penal /= n;
  m.precision /= n;
  m.recall /= n;
  m.hpr /= n;
  return m;
}

namespace {

double compose_means(const FactorMeans& m, Metric metric, const ParamSet& p) {
  if (metric == Metric::kHlepor) {
    const double values[] = {m.lp, m.npos_penal, m.hpr};
    const double weights[] = {p.w_lp, p.w_npos, p.w_hpr};
    return weighted_harmonic(values, weights);
  }
  return m.lp * m.npos_penal * m.hpr;
}

}  // namespace

SystemScore system_score(std::span<const SegmentScore> scores, Metric metric, Strategy strategy,
                         const ParamSet& p) {
  if (scores.empty()) throw std::invalid_argument("system score needs at least one segment");
  SystemScore out;
  out.metric = metric;
  out.strategy = strategy;
  out.hybrid = std::all_of(scores.begin(), scores.end(),
                           [](const SegmentScore& s) { return s.pos.has_value(); });
  out.word_means = factor_means(scores, false);
  if (out.hybrid) out.pos_means = factor_means(scores, true);

  if (strategy == Strategy::kA) {
    double sum = 0.0;
    for (const auto& s : scores) sum += s.score;
    out.score = sum / static_cast<double>(scores.size());
  } else {
    const double word = compose_means(out.word_means, metric, p);
    out.score = out.hybrid ? hybrid_score(word, compose_means(*out.pos_means, metric, p), p) : word;
  }
  return out;
}

SystemScore lepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                         const ParamSet& p) {
  return system_score(scores, Metric::kLepor, strategy, p);
}

SystemScore hlepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                          const ParamSet& p) {
  return system_score(scores, Metric::kHlepor, strategy, p);
}

SystemScore nlepor_system(std::span<const SegmentScore> scores, Strategy strategy,
                          const ParamSet& p) {
  return system_score(scores, Metric::kNlepor, strategy, p);
}

}  // namespace lepor
