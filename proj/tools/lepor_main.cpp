// Command-line front end: score, meta-eval and tune.
//
// Exit codes: 0 success, 1 input/format error, 2 invalid configuration.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lepor/cli_io.hpp"
#include "lepor/error.hpp"
#include "lepor/meta_eval.hpp"
#include "lepor/metrics.hpp"
#include "lepor/tuner.hpp"

namespace fs = std::filesystem;
using namespace lepor;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;

void write_output(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path->string() + "'");
  out << text;
}

struct ScoreArgs {
  std::string hyp;
  std::vector<std::string> refs;
  std::string pos_hyp;
  std::vector<std::string> pos_refs;
  std::string params;
  std::string metric = "lepor";
  std::string level = "sentence";
  std::string out;
  std::string format = "tsv";
  bool no_case_fold = false;
  bool smooth = false;
};

int run_score(const ScoreArgs& a) {
  RunConfig cfg;
  cfg.hypothesis = a.hyp;
  for (const auto& r : a.refs) cfg.references.emplace_back(r);
  if (!a.pos_hyp.empty()) cfg.pos_hypothesis = a.pos_hyp;
  for (const auto& r : a.pos_refs) cfg.pos_references.emplace_back(r);
  if (!a.params.empty()) cfg.params_path = a.params;
  cfg.metric = parse_metric(a.metric);
  cfg.level = parse_level(a.level);
  cfg.format = parse_format(a.format);
  if (!a.out.empty()) cfg.output = a.out;
  cfg.fold_case = !a.no_case_fold;
  cfg.smooth_ngrams = a.smooth;

  const ParamSet params = cfg.params_path ? parse_param_config(*cfg.params_path) : ParamSet{};
  if (uses_pos(params) && !cfg.pos_hypothesis) {
    throw ConfigError("w_hp > 0 requires --pos-hyp and --pos-ref");
  }
  const Corpus corpus = load_segments(cfg);
  if (corpus.segments.empty()) throw InputError("hypothesis file has no lines");

  const auto scores = score_corpus(corpus, params, cfg.metric, {cfg.smooth_ngrams});
  const auto system = system_score(scores, cfg.metric, strategy_for(cfg.level), params);
  write_output(cfg.output, emit_report(scores, system, cfg.format, cfg.level, params));
  return 0;
}

struct MetaArgs {
  std::string metric_scores;
  std::string human_scores;
  std::string stat;
  std::size_t quantiles = 2;
};

int run_meta_eval(const MetaArgs& a) {
  const EvalSeries series(read_numbers(a.metric_scores), read_numbers(a.human_scores));
  double value = 0.0;
  std::string note;
  if (a.stat == "pearson") {
    value = pearson(series);
  } else if (a.stat == "spearman") {
    const auto ranked = RankedSeries::from_scores(series);
    value = spearman(ranked);
    note = ranked.has_ties() ? "\tties=average-rank" : "\tties=none";
  } else if (a.stat == "kendall") {
    const RankedSeries ranked(series.x(), series.y());
    value = kendall_tau(ranked);
    note = ranked.has_ties() ? "\tties=neither-concordant-nor-discordant" : "\tties=none";
  } else if (a.stat == "mae") {
    value = mae(series);
  } else if (a.stat == "rmse") {
    value = rmse(series);
  } else if (a.stat == "deltaavg") {
    if (a.quantiles < 2 || a.quantiles > series.size()) {
      throw ConfigError("--quantiles must lie in [2, item count]");
    }
    value = delta_avg(series.x(), series.y(), a.quantiles);
  } else {
    throw ConfigError("unknown statistic '" + a.stat + "'");
  }
  std::cout << a.stat << '\t' << format_fixed(value) << note << '\n';
  return 0;
}

struct TuneArgs {
  std::string manifest;
  std::string human_scores;
  std::string grid;
  std::string metric = "hlepor";
  std::string objective = "spearman";
  std::string strategy;
  std::vector<std::string> refs;
  std::vector<std::string> pos_refs;
  std::string out;
  bool no_case_fold = false;
  bool smooth = false;
  std::size_t threads = 0;
};

int run_tune(const TuneArgs& a) {
  const Metric metric = parse_metric(a.metric);
  const auto human = read_numbers(a.human_scores);
  const fs::path manifest_path = a.manifest;
  const fs::path base = manifest_path.parent_path();

  std::vector<DevSystem> dev;
  bool all_pos = true;
  for (const auto& line : read_lines(manifest_path)) {
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() > 2) {
      throw InputError("manifest line must be '<hyp> [<pos-hyp>]': " + line);
    }
    RunConfig cfg;
    auto resolve = [&](const std::string& p) {
      const fs::path path(p);
      return path.is_absolute() ? path : base / path;
    };
    cfg.hypothesis = resolve(fields[0]);
    for (const auto& r : a.refs) cfg.references.emplace_back(r);
    cfg.fold_case = !a.no_case_fold;
    if (fields.size() == 2) {
      if (a.pos_refs.size() != a.refs.size()) {
        throw ConfigError("POS hypotheses need one --pos-ref per --ref");
      }
      cfg.pos_hypothesis = resolve(fields[1]);
      for (const auto& r : a.pos_refs) cfg.pos_references.emplace_back(r);
    } else {
      all_pos = false;
    }
    dev.push_back({fields[0], load_segments(cfg), 0.0});
  }
  if (human.size() != dev.size()) {
    throw InputError("manifest lists " + std::to_string(dev.size()) + " systems but '" +
                     a.human_scores + "' has " + std::to_string(human.size()) + " scores");
  }
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i].human_score = human[i];

  GridSpec grid;
  if (a.grid == "preset") {
    grid = table_preset_grid(all_pos && !dev.empty());
  } else {
    grid = parse_grid_file(a.grid);
  }
  grid.objective = parse_objective(a.objective);
  if (!a.strategy.empty()) grid.strategy = parse_strategy(a.strategy);

  const TuneResult result = grid_search(dev, grid, metric, {a.smooth}, a.threads);
  write_output(a.out.empty() ? std::nullopt : std::optional<fs::path>(a.out),
               emit_tune_report(result, grid, metric));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEPOR-family machine translation evaluation"};
  app.require_subcommand(1);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score hypotheses against references");
  score_cmd->add_option("--hyp", score.hyp, "Hypothesis file, one segment per line")->required();
  score_cmd->add_option("--ref", score.refs, "Reference file (repeatable)")->required();
  score_cmd->add_option("--pos-hyp", score.pos_hyp, "Hypothesis POS tag file");
  score_cmd->add_option("--pos-ref", score.pos_refs, "Reference POS tag file (one per --ref)");
  score_cmd->add_option("--metric", score.metric, "lepor | hlepor | nlepor");
  score_cmd->add_option("--level", score.level, "sentence | system-a | system-b");
  score_cmd->add_option("--params", score.params, "JSON parameter file");
  score_cmd->add_option("--out", score.out, "Output file (default stdout)");
  score_cmd->add_option("--format", score.format, "tsv | json");
  score_cmd->add_flag("--no-case-fold", score.no_case_fold, "Keep token case");
  score_cmd->add_flag("--smooth", score.smooth, "Add-one n-gram smoothing (nlepor)");

  MetaArgs meta;
  auto* meta_cmd = app.add_subcommand("meta-eval", "Correlate metric scores with human scores");
  meta_cmd->add_option("--metric-scores", meta.metric_scores, "One number per line")->required();
  meta_cmd->add_option("--human-scores", meta.human_scores, "One number per line")->required();
  meta_cmd->add_option("--stat", meta.stat, "pearson | spearman | kendall | mae | rmse | deltaavg")
      ->required();
  meta_cmd->add_option("--quantiles", meta.quantiles, "DeltaAvg quantile count");

  TuneArgs tune;
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search parameters against human judgments");
  tune_cmd->add_option("--systems-manifest", tune.manifest, "One '<hyp> [<pos-hyp>]' per line")
      ->required();
  tune_cmd->add_option("--human-scores", tune.human_scores, "One score per system")->required();
  tune_cmd->add_option("--grid", tune.grid, "Grid JSON file, or 'preset'")->required();
  tune_cmd->add_option("--ref", tune.refs, "Reference file (repeatable)")->required();
  tune_cmd->add_option("--pos-ref", tune.pos_refs, "Reference POS tag file (one per --ref)");
  tune_cmd->add_option("--metric", tune.metric, "lepor | hlepor | nlepor");
  tune_cmd->add_option("--objective", tune.objective, "pearson | spearman | kendall");
  tune_cmd->add_option("--strategy", tune.strategy, "A | B (overrides the grid file)");
  tune_cmd->add_option("--out", tune.out, "Output file (default stdout)");
  tune_cmd->add_option("--threads", tune.threads, "Worker threads (0 = hardware)");
  tune_cmd->add_flag("--no-case-fold", tune.no_case_fold, "Keep token case");
  tune_cmd->add_flag("--smooth", tune.smooth, "Add-one n-gram smoothing (nlepor)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*score_cmd) return run_score(score);
    if (*meta_cmd) return run_meta_eval(meta);
    if (*tune_cmd) return run_tune(tune);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
