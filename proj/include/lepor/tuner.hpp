#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lepor/metrics.hpp"
#include "lepor/text_model.hpp"

namespace lepor {

enum class Objective { kPearson, kSpearman, kKendall };

std::string to_string(Objective o);
/// Throws ConfigError on an unknown name.
Objective parse_objective(std::string_view name);

/// Candidate values per parameter group. Ratios need not be normalized; an
/// empty group contributes the default ParamSet value.
struct GridSpec {
  std::vector<std::array<double, 3>> factor_weights;  // w_lp : w_npos : w_hpr
  std::vector<std::array<double, 2>> alpha_beta;      // alpha : beta
  std::vector<std::array<double, 2>> word_pos;        // w_hw : w_hp
  std::vector<std::vector<double>> ngram_weights;     // w_1 : ... : w_N
  std::vector<std::size_t> windows;
  Objective objective = Objective::kSpearman;
  Strategy strategy = Strategy::kA;
};

/// Normalizes every ratio to sum 1 and drops candidates that are positive
/// rescalings of an earlier one. Throws ConfigError if a candidate cannot form
/// a valid ParamSet.
GridSpec canonicalize(const GridSpec& grid);

/// Every ParamSet of the canonical grid in enumeration order (factor weights
/// outermost, then alpha:beta, word:POS, n-gram weights, window).
std::vector<ParamSet> expand(const GridSpec& grid);

/// The grid implied by the tuned hLEPOR ratios reported for WMT: factor
/// ratios HPR:LP:NPosPenal of 7:2:1, 3:2:1 and 1:3:7, alpha:beta of 9:1 and
/// 1:9, and word:POS mixes of 9:1 and 1:9 (word-only when with_pos is false).
GridSpec table_preset_grid(bool with_pos);

struct DevSystem {
  std::string name;
  Corpus corpus;
  double human_score = 0.0;
};

struct GridEntry {
  ParamSet params;
  std::vector<double> system_scores;
  std::optional<double> objective;  // empty when the correlation is undefined
};

struct TuneResult {
  ParamSet best;
  double best_objective = 0.0;
  std::vector<GridEntry> table;
};

/// Exhaustive grid search for the ParamSet whose system-level scores
/// correlate best with the human scores. Ties go to the earliest grid point.
///
/// Throws InputError for fewer than three systems or constant human scores,
/// ConfigError for an empty or invalid grid, and UndefinedStatistic when no
/// grid point yields a defined correlation.
TuneResult grid_search(std::span<const DevSystem> dev, const GridSpec& grid, Metric metric,
                       const ScoreOptions& options = {}, std::size_t threads = 0);

/// The objective correlation between metric and human scores.
double objective_value(Objective o, std::span<const double> metric_scores,
                       std::span<const double> human_scores);

}  // namespace lepor
