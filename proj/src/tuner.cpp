#include "lepor/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "lepor/error.hpp"
#include "lepor/meta_eval.hpp"

namespace lepor {
namespace {

template <typename Ratio>
Ratio normalized(const Ratio& r, const char* group) {
  Ratio out = r;
  double sum = 0.0;
  for (double v : r) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(std::string(group) + " ratios must be non-negative");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw ConfigError(std::string(group) + " ratio must have a positive sum");
  for (auto& v : out) v /= sum;
  return out;
}

template <typename Ratio>
bool same_ratio(const Ratio& a, const Ratio& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  }
  return true;
}

template <typename Ratio>
std::vector<Ratio> canonical_group(const std::vector<Ratio>& group, const char* name) {
  std::vector<Ratio> out;
  for (const auto& r : group) {
    Ratio n = normalized(r, name);
    const bool dup =
        std::any_of(out.begin(), out.end(), [&](const Ratio& seen) { return same_ratio(seen, n); });
    if (!dup) out.push_back(std::move(n));
  }
  return out;
}

// A SegmentAlignments per segment, per system.
using SystemAlignments = std::vector<std::vector<SegmentAlignments>>;

}  // namespace

std::string to_string(Objective o) {
  switch (o) {
    case Objective::kPearson:
      return "pearson";
    case Objective::kSpearman:
      return "spearman";
    case Objective::kKendall:
      return "kendall";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  if (name == "pearson") return Objective::kPearson;
  if (name == "spearman") return Objective::kSpearman;
  if (name == "kendall") return Objective::kKendall;
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

GridSpec canonicalize(const GridSpec& grid) {
  const ParamSet defaults;
  GridSpec out;
  out.objective = grid.objective;
  out.strategy = grid.strategy;
  out.factor_weights = canonical_group(grid.factor_weights, "factor weight");
  out.alpha_beta = canonical_group(grid.alpha_beta, "alpha:beta");
  out.word_pos = canonical_group(grid.word_pos, "w_hw:w_hp");
  out.ngram_weights = canonical_group(grid.ngram_weights, "ngram weight");
  for (const auto& w : out.ngram_weights) {
    if (w.empty()) throw ConfigError("ngram weight candidates must not be empty");
  }
  for (std::size_t w : grid.windows) {
    if (w == 0) throw ConfigError("window candidates must be positive");
    if (std::find(out.windows.begin(), out.windows.end(), w) == out.windows.end()) {
      out.windows.push_back(w);
    }
  }
  if (out.factor_weights.empty()) {
    out.factor_weights.push_back(
        normalized(std::array{defaults.w_lp, defaults.w_npos, defaults.w_hpr}, "factor weight"));
  }
  if (out.alpha_beta.empty()) {
    out.alpha_beta.push_back(normalized(std::array{defaults.alpha, defaults.beta}, "alpha:beta"));
  }
  if (out.word_pos.empty()) out.word_pos.push_back({1.0, 0.0});
  if (out.ngram_weights.empty()) out.ngram_weights.push_back(defaults.ngram_weights);
  if (out.windows.empty()) out.windows.push_back(defaults.context_window);
  return out;
}

std::vector<ParamSet> expand(const GridSpec& grid) {
  const GridSpec g = canonicalize(grid);
  std::vector<ParamSet> out;
  for (const auto& fw : g.factor_weights) {
    for (const auto& ab : g.alpha_beta) {
      for (const auto& wp : g.word_pos) {
        for (const auto& nw : g.ngram_weights) {
          for (std::size_t window : g.windows) {
            ParamSet p;
            p.w_lp = fw[0];
            p.w_npos = fw[1];
            p.w_hpr = fw[2];
            p.alpha = ab[0];
            p.beta = ab[1];
            p.w_hw = wp[0];
            p.w_hp = wp[1];
            p.ngram_weights = nw;
            // Normalization leaves round-off; pin the sum exactly.
            const double sum = std::accumulate(nw.begin(), nw.end(), 0.0);
            if (std::abs(sum - 1.0) > 1e-9) p.ngram_weights.back() += 1.0 - sum;
            p.context_window = window;
            out.push_back(validate_params(p));
          }
        }
      }
    }
  }
  return out;
}

GridSpec table_preset_grid(bool with_pos) {
  GridSpec g;
  // Reported as HPR:LP:NPosPenal; stored as (w_lp, w_npos, w_hpr).
  g.factor_weights = {{2, 1, 7}, {2, 1, 3}, {3, 7, 1}};
  g.alpha_beta = {{9, 1}, {1, 9}};
  if (with_pos) {
    g.word_pos = {{9, 1}, {1, 9}};
  } else {
    g.word_pos = {{1, 0}};
  }
  g.ngram_weights = {{1.0}};
  g.windows = {2};
  g.objective = Objective::kSpearman;
  g.strategy = Strategy::kA;
  return g;
}

double objective_value(Objective o, std::span<const double> metric_scores,
                       std::span<const double> human_scores) {
  EvalSeries s({metric_scores.begin(), metric_scores.end()},
               {human_scores.begin(), human_scores.end()});
  switch (o) {
    case Objective::kPearson:
      return pearson(s);
    case Objective::kSpearman:
      return spearman(s);
    case Objective::kKendall:
      return kendall_tau(s);
  }
  throw ConfigError("unknown objective");
}

TuneResult grid_search(std::span<const DevSystem> dev, const GridSpec& grid, Metric metric,
                       const ScoreOptions& options, std::size_t threads) {
  if (dev.size() < 3) throw InputError("tuning needs at least three systems with human scores");
  std::vector<double> human;
  human.reserve(dev.size());
  for (const auto& sys : dev) {
    if (sys.corpus.segments.empty()) throw InputError("system '" + sys.name + "' has no segments");
    human.push_back(sys.human_score);
  }
  if (std::all_of(human.begin(), human.end(), [&](double h) { return h == human.front(); })) {
    throw InputError("human scores are all equal; no correlation can be measured");
  }

  const std::vector<ParamSet> points = expand(grid);
  if (points.empty()) throw ConfigError("empty grid");
  const bool needs_pos = std::any_of(points.begin(), points.end(), uses_pos);

  // Alignments depend only on the window; compute them once per window.
  std::map<std::size_t, SystemAlignments> cache;
  for (const auto& p : points) {
    if (cache.contains(p.context_window)) continue;
    SystemAlignments per_system;
    per_system.reserve(dev.size());
    for (const auto& sys : dev) {
      std::vector<SegmentAlignments> segs;
      segs.reserve(sys.corpus.segments.size());
      for (const auto& seg : sys.corpus.segments) {
        segs.push_back(align_segment(seg, p.context_window, needs_pos));
      }
      per_system.push_back(std::move(segs));
    }
    cache.emplace(p.context_window, std::move(per_system));
  }

  TuneResult result;
  result.table.resize(points.size());

  auto evaluate = [&](std::size_t i) {
    const ParamSet& p = points[i];
    const SystemAlignments& aligned = cache.at(p.context_window);
    GridEntry entry;
    entry.params = p;
    for (std::size_t s = 0; s < dev.size(); ++s) {
      const auto& segments = dev[s].corpus.segments;
      std::vector<SegmentScore> scores;
      scores.reserve(segments.size());
      for (std::size_t k = 0; k < segments.size(); ++k) {
        scores.push_back(score_segment(segments[k], aligned[s][k], p, metric, options));
        scores.back().index = k;
      }
      entry.system_scores.push_back(system_score(scores, metric, grid.strategy, p).score);
    }
    try {
      entry.objective = objective_value(grid.objective, entry.system_scores, human);
    } catch (const UndefinedStatistic&) {
      entry.objective.reset();
    }
    result.table[i] = std::move(entry);
  };

  std::size_t workers =
      threads ? threads : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, points.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
              evaluate(i);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const auto& obj = result.table[i].objective;
    if (obj && (!best || *obj > *result.table[*best].objective)) best = i;
  }
  if (!best) throw UndefinedStatistic("no grid point produced a defined correlation");
  result.best = result.table[*best].params;
  result.best_objective = *result.table[*best].objective;
  return result;
}

}  // namespace lepor
