#include "lepor/cli_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lepor/error.hpp"

namespace lepor {
namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path, bool config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    const std::string msg = "cannot read '" + path.string() + "'";
    if (config) throw ConfigError(msg);
    throw InputError(msg);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ojson params_json(const ParamSet& p) {
  ojson j;
  j["alpha"] = round6(p.alpha);
  j["beta"] = round6(p.beta);
  j["w_lp"] = round6(p.w_lp);
  j["w_npos"] = round6(p.w_npos);
  j["w_hpr"] = round6(p.w_hpr);
  ojson weights = ojson::array();
  for (double w : p.ngram_weights) weights.push_back(round6(w));
  j["ngram_weights"] = weights;
  j["window"] = p.context_window;
  j["w_hw"] = round6(p.w_hw);
  j["w_hp"] = round6(p.w_hp);
  return j;
}

ojson means_json(const FactorMeans& m) {
  ojson j;
  j["LP"] = round6(m.lp);
  j["NPD"] = round6(m.npd);
  j["NPosPenal"] = round6(m.npos_penal);
  j["P"] = round6(m.precision);
  j["R"] = round6(m.recall);
  j["HPR"] = round6(m.hpr);
  return j;
}

ojson factors_json(const FactorValues& f) {
  ojson j;
  j["LP"] = round6(f.lp);
  j["NPD"] = round6(f.npd);
  j["NPosPenal"] = round6(f.npos_penal);
  j["P"] = round6(f.precision.empty() ? 0.0 : f.precision[0]);
  j["R"] = round6(f.recall.empty() ? 0.0 : f.recall[0]);
  j["HPR"] = round6(f.hpr);
  return j;
}

double number_field(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

template <std::size_t N>
std::vector<std::array<double, N>> ratio_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("'" + key + "' must be a list of ratios");
  std::vector<std::array<double, N>> out;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != N) {
      throw ConfigError("each '" + key + "' entry must have " + std::to_string(N) + " numbers");
    }
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = number_field(item[i], key);
    out.push_back(r);
  }
  return out;
}

nlohmann::json parse_json_object(std::string_view text, const char* what) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  return j;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string to_string(Level l) {
  switch (l) {
    case Level::kSentence:
      return "sentence";
    case Level::kSystemA:
      return "system-a";
    case Level::kSystemB:
      return "system-b";
  }
  return "unknown";
}

Level parse_level(std::string_view name) {
  if (name == "sentence") return Level::kSentence;
  if (name == "system-a") return Level::kSystemA;
  if (name == "system-b") return Level::kSystemB;
  throw ConfigError("unknown level '" + std::string(name) + "'");
}

ReportFormat parse_format(std::string_view name) {
  if (name == "tsv") return ReportFormat::kTsv;
  if (name == "json") return ReportFormat::kJson;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

Strategy strategy_for(Level l) { return l == Level::kSystemB ? Strategy::kB : Strategy::kA; }

std::string format_fixed(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path, false);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

Corpus load_segments(const RunConfig& config) {
  if (config.references.empty()) throw ConfigError("at least one reference file is required");
  const bool with_pos = config.pos_hypothesis.has_value() || !config.pos_references.empty();
  if (with_pos && (!config.pos_hypothesis || config.pos_references.size() != config.references.size())) {
    throw ConfigError("POS input needs a hypothesis tag file and one tag file per reference");
  }

  const auto hyp_lines = read_lines(config.hypothesis);
  const std::size_t n = hyp_lines.size();
  auto check_count = [&](const std::filesystem::path& path, std::size_t count) {
    if (count != n) {
      throw InputError("line count mismatch: '" + config.hypothesis.string() + "' has " +
                       std::to_string(n) + " lines but '" + path.string() + "' has " +
                       std::to_string(count));
    }
  };

  std::vector<std::vector<std::string>> ref_lines;
  for (const auto& path : config.references) {
    ref_lines.push_back(read_lines(path));
    check_count(path, ref_lines.back().size());
  }
  std::vector<std::string> pos_hyp_lines;
  std::vector<std::vector<std::string>> pos_ref_lines;
  if (with_pos) {
    pos_hyp_lines = read_lines(*config.pos_hypothesis);
    check_count(*config.pos_hypothesis, pos_hyp_lines.size());
    for (const auto& path : config.pos_references) {
      pos_ref_lines.push_back(read_lines(path));
      check_count(path, pos_ref_lines.back().size());
    }
  }

  auto tagged = [](Sentence words, const std::string& tag_line, const std::filesystem::path& path,
                   std::size_t line) {
    try {
      return TaggedSentence(std::move(words), split_whitespace(tag_line)).tag_sequence();
    } catch (const InputError& e) {
      throw InputError("'" + path.string() + "' line " + std::to_string(line) + ": " + e.what());
    }
  };

  Corpus corpus;
  corpus.segments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Sentence hyp = tokenize(hyp_lines[i], config.fold_case);
    std::vector<Sentence> refs;
    for (const auto& lines : ref_lines) refs.push_back(tokenize(lines[i], config.fold_case));
    std::optional<PosLayer> pos;
    if (with_pos) {
      PosLayer layer;
      layer.hypothesis = tagged(hyp, pos_hyp_lines[i], *config.pos_hypothesis, i + 1);
      for (std::size_t r = 0; r < refs.size(); ++r) {
        layer.references.push_back(
            tagged(refs[r], pos_ref_lines[r][i], config.pos_references[r], i + 1));
      }
      pos = std::move(layer);
    }
    corpus.segments.emplace_back(std::move(hyp), std::move(refs), std::move(pos));
  }
  return corpus;
}

std::vector<double> read_numbers(const std::filesystem::path& path) {
  std::vector<double> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view field = trim(lines[i]);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw InputError("'" + path.string() + "' line " + std::to_string(i + 1) +
                       ": expected a number, got '" + std::string(field) + "'");
    }
    out.push_back(v);
  }
  return out;
}

ParamSet parse_param_json(std::string_view text) {
  const auto j = parse_json_object(text, "parameter config");
  ParamSet p;
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") {
      p.alpha = number_field(value, key);
    } else if (key == "beta") {
      p.beta = number_field(value, key);
    } else if (key == "w_lp") {
      p.w_lp = number_field(value, key);
    } else if (key == "w_npos") {
      p.w_npos = number_field(value, key);
    } else if (key == "w_hpr") {
      p.w_hpr = number_field(value, key);
    } else if (key == "w_hw") {
      p.w_hw = number_field(value, key);
    } else if (key == "w_hp") {
      p.w_hp = number_field(value, key);
    } else if (key == "window") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw ConfigError("'window' must be a positive integer");
      }
      p.context_window = value.get<std::size_t>();
    } else if (key == "ngram_weights") {
      if (!value.is_array()) throw ConfigError("'ngram_weights' must be a list of numbers");
      p.ngram_weights.clear();
      for (const auto& w : value) p.ngram_weights.push_back(number_field(w, key));
    } else {
      throw ConfigError("unknown parameter key '" + key + "'");
    }
  }
  return validate_params(p);
}

ParamSet parse_param_config(const std::filesystem::path& path) {
  return parse_param_json(read_file(path, true));
}

GridSpec parse_grid_json(std::string_view text) {
  const auto j = parse_json_object(text, "grid");
  GridSpec g;
  for (const auto& [key, value] : j.items()) {
    if (key == "factor_weights") {
      g.factor_weights = ratio_list<3>(value, key);
    } else if (key == "alpha_beta") {
      g.alpha_beta = ratio_list<2>(value, key);
    } else if (key == "word_pos") {
      g.word_pos = ratio_list<2>(value, key);
    } else if (key == "ngram_weights") {
      if (!value.is_array()) throw ConfigError("'ngram_weights' must be a list of lists");
      for (const auto& item : value) {
        if (!item.is_array()) throw ConfigError("'ngram_weights' must be a list of lists");
        std::vector<double> w;
        for (const auto& x : item) w.push_back(number_field(x, key));
        g.ngram_weights.push_back(std::move(w));
      }
    } else if (key == "window") {
      if (!value.is_array()) throw ConfigError("'window' must be a list of positive integers");
      for (const auto& w : value) {
        if (!w.is_number_integer() || w.get<long long>() < 1) {
          throw ConfigError("'window' must be a list of positive integers");
        }
        g.windows.push_back(w.get<std::size_t>());
      }
    } else if (key == "strategy") {
      if (!value.is_string()) throw ConfigError("'strategy' must be \"A\" or \"B\"");
      g.strategy = parse_strategy(value.get<std::string>());
    } else if (key == "objective") {
      if (!value.is_string()) throw ConfigError("'objective' must be a string");
      g.objective = parse_objective(value.get<std::string>());
    } else {
      throw ConfigError("unknown grid key '" + key + "'");
    }
  }
  canonicalize(g);  // validates every candidate
  return g;
}

GridSpec parse_grid_file(const std::filesystem::path& path) {
  return parse_grid_json(read_file(path, true));
}

std::string emit_report(std::span<const SegmentScore> scores, const SystemScore& system,
                        ReportFormat format, Level level, const ParamSet& params) {
  if (format == ReportFormat::kTsv) {
    std::string out = "index\tLP\tNPD\tNPosPenal\tP\tR\tHPR\tscore\tdegenerate\n";
    for (const auto& s : scores) {
      const FactorValues& f = s.word;
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", s.index + 1, format_fixed(f.lp),
                         format_fixed(f.npd), format_fixed(f.npos_penal),
                         format_fixed(f.precision.empty() ? 0.0 : f.precision[0]),
                         format_fixed(f.recall.empty() ? 0.0 : f.recall[0]), format_fixed(f.hpr),
                         format_fixed(s.score), s.degenerate() ? 1 : 0);
    }
    if (level != Level::kSentence) {
      std::size_t flagged = 0;
      for (const auto& s : scores) flagged += s.degenerate() ? 1 : 0;
      const FactorMeans& m = system.word_means;
      out += fmt::format("system-{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", to_string(system.strategy),
                         format_fixed(m.lp), format_fixed(m.npd), format_fixed(m.npos_penal),
                         format_fixed(m.precision), format_fixed(m.recall), format_fixed(m.hpr),
                         format_fixed(system.score), flagged);
    }
    return out;
  }

  ojson j;
  j["metric"] = to_string(system.metric);
  j["hybrid"] = system.hybrid;
  j["level"] = to_string(level);
  j["params"] = params_json(params);
  ojson sys;
  sys["strategy"] = to_string(system.strategy);
  sys["score"] = round6(system.score);
  sys["factor_means"] = means_json(system.word_means);
  if (system.pos_means) sys["pos_factor_means"] = means_json(*system.pos_means);
  j["system"] = sys;
  ojson segs = ojson::array();
  for (const auto& s : scores) {
    ojson row;
    row["index"] = s.index + 1;
    const ojson word = factors_json(s.word);
    for (const auto& [k, v] : word.items()) row[k] = v;
    row["score"] = round6(s.score);
    row["degenerate"] = s.degenerate();
    if (s.pos) {
      row["word_score"] = round6(s.word_score);
      row["pos_score"] = round6(*s.pos_score);
      row["pos"] = factors_json(*s.pos);
    }
    segs.push_back(row);
  }
  j["segments"] = segs;
  return j.dump(2) + "\n";
}

std::string emit_tune_report(const TuneResult& result, const GridSpec& grid, Metric metric) {
  ojson j;
  j["metric"] = to_string(metric);
  j["objective"] = to_string(grid.objective);
  j["strategy"] = to_string(grid.strategy);
  ojson best;
  best["params"] = params_json(result.best);
  best["objective"] = round6(result.best_objective);
  j["best"] = best;
  ojson table = ojson::array();
  for (const auto& e : result.table) {
    ojson row;
    row["params"] = params_json(e.params);
    ojson scores = ojson::array();
    for (double s : e.system_scores) scores.push_back(round6(s));
    row["system_scores"] = scores;
    row["objective"] = e.objective ? ojson(round6(*e.objective)) : ojson(nullptr);
    table.push_back(row);
  }
  j["grid"] = table;
  return j.dump(2) + "\n";
}

}  // namespace lepor
