#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lepor/metrics.hpp"
#include "lepor/text_model.hpp"
#include "lepor/tuner.hpp"

namespace lepor {

enum class Level { kSentence, kSystemA, kSystemB };
enum class ReportFormat { kTsv, kJson };

std::string to_string(Level l);
Level parse_level(std::string_view name);
ReportFormat parse_format(std::string_view name);
/// Strategy used for the system summary at a level (sentence reports use A).
Strategy strategy_for(Level l);

struct RunConfig {
  std::filesystem::path hypothesis;
  std::vector<std::filesystem::path> references;
  std::optional<std::filesystem::path> pos_hypothesis;
  std::vector<std::filesystem::path> pos_references;
  std::optional<std::filesystem::path> params_path;
  Metric metric = Metric::kLepor;
  Level level = Level::kSentence;
  std::optional<std::filesystem::path> output;
  ReportFormat format = ReportFormat::kTsv;
  bool fold_case = true;
  bool smooth_ngrams = false;
};

/// Lines of a UTF-8 text file without their terminators; a final newline does
/// not start an extra line. Throws InputError if the file cannot be read.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Line i of every file forms segment i. Throws InputError on line-count or
/// tag/token-count mismatches, naming the files and line.
Corpus load_segments(const RunConfig& config);

/// One number per line. Throws InputError on a malformed line.
std::vector<double> read_numbers(const std::filesystem::path& path);

/// Flat JSON object with optional keys alpha, beta, w_lp, w_npos, w_hpr,
/// ngram_weights, window, w_hw, w_hp. Throws ConfigError on unknown keys,
/// wrong types, or invariant violations.
ParamSet parse_param_json(std::string_view text);
ParamSet parse_param_config(const std::filesystem::path& path);

/// JSON object with optional lists factor_weights ([w_lp, w_npos, w_hpr]),
/// alpha_beta, word_pos, ngram_weights, window and optional strategy /
/// objective strings. Throws ConfigError on malformed content.
GridSpec parse_grid_json(std::string_view text);
GridSpec parse_grid_file(const std::filesystem::path& path);

/// TSV: header then one row per segment (index, LP, NPD, NPosPenal, P, R,
/// HPR, score, degenerate), fixed 6 decimals; system levels append a summary
/// row. JSON: metric, params, system, segments.
std::string emit_report(std::span<const SegmentScore> scores, const SystemScore& system,
                        ReportFormat format, Level level, const ParamSet& params);

std::string emit_tune_report(const TuneResult& result, const GridSpec& grid, Metric metric);

/// Fixed 6-decimal rendering with '.' as separator.
std::string format_fixed(double v);

}  // namespace lepor
