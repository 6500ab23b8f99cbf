#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "lepor/cli_io.hpp"
#include "lepor/error.hpp"

using namespace lepor;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("lepor_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(ReadLines, TrailingNewlineAndCrlf) {
  TempDir dir;
  EXPECT_EQ(read_lines(dir.write("a", "x\ny\n")), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(read_lines(dir.write("b", "x\r\ny")), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(read_lines(dir.write("c", "x\n\n")), (std::vector<std::string>{"x", ""}));
  EXPECT_THROW(read_lines(dir.write("d", "") / "missing"), InputError);
}

TEST(LoadSegments, ParallelFiles) {
  TempDir dir;
  RunConfig cfg;
  cfg.hypothesis = dir.write("hyp", "a b\nc d\ne f\n");
  cfg.references = {dir.write("ref", "a b\nc\ne f g\n")};
  const Corpus c = load_segments(cfg);
  EXPECT_EQ(c.segment_count(), 3u);
  EXPECT_EQ(c.segments[1].references()[0].length(), 1u);
}

TEST(LoadSegments, LineCountMismatch) {
  TempDir dir;
  RunConfig cfg;
  cfg.hypothesis = dir.write("hyp", "a\nb\nc\n");
  cfg.references = {dir.write("ref", "a\nb\n")};
  try {
    load_segments(cfg);
    FAIL();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("hyp"), std::string::npos);
    EXPECT_NE(msg.find("ref"), std::string::npos);
    EXPECT_NE(msg.find('3'), std::string::npos);
    EXPECT_NE(msg.find('2'), std::string::npos);
  }
}

TEST(LoadSegments, TagCountMismatchNamesLine) {
  TempDir dir;
  RunConfig cfg;
  cfg.hypothesis = dir.write("hyp", "a dog\nthe cat\n");
  cfg.references = {dir.write("ref", "a dog\nthe cat\n")};
  cfg.pos_hypothesis = dir.write("hyp.pos", "DET NOUN\nDET NOUN VERB\n");
  cfg.pos_references = {dir.write("ref.pos", "DET NOUN\nDET NOUN\n")};
  try {
    load_segments(cfg);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  cfg.pos_hypothesis = dir.write("hyp2.pos", "DET NOUN\nDET NOUN\n");
  const Corpus c = load_segments(cfg);
  ASSERT_TRUE(c.segments[1].has_pos());
  EXPECT_EQ(c.segments[1].pos()->hypothesis.canonical(), "DET NOUN");
}

TEST(ParamConfig, DefaultsAndOverrides) {
  EXPECT_EQ(parse_param_json("{}"), ParamSet{});
  const ParamSet cz = parse_param_json(R"({"alpha": 1, "beta": 9})");
  EXPECT_EQ(cz.alpha, 1.0);
  EXPECT_EQ(cz.beta, 9.0);
  const ParamSet f = parse_param_json(R"({"w_lp": 3, "w_npos": 2, "w_hpr": 7})");
  EXPECT_EQ(f.w_hpr, 7.0);
  const ParamSet n = parse_param_json(R"({"ngram_weights": [0.5, 0.5], "window": 3, "w_hp": 1})");
  EXPECT_EQ(n.max_order(), 2u);
  EXPECT_EQ(n.context_window, 3u);
}

TEST(ParamConfig, Rejections) {
  EXPECT_THROW(parse_param_json(R"({"w_lp": -1})"), ConfigError);
  EXPECT_THROW(parse_param_json(R"({"alpah": 1})"), ConfigError);
  EXPECT_THROW(parse_param_json(R"({"alpha": "9"})"), ConfigError);
  EXPECT_THROW(parse_param_json(R"({"window": 1.5})"), ConfigError);
  EXPECT_THROW(parse_param_json(R"({"window": 0})"), ConfigError);
  EXPECT_THROW(parse_param_json(R"([1, 2])"), ConfigError);
  EXPECT_THROW(parse_param_json(R"({"alpha": )"), ConfigError);
  EXPECT_THROW(parse_param_config("/nonexistent/params.json"), ConfigError);
}

TEST(GridConfig, Parse) {
  const GridSpec g = parse_grid_json(
      R"({"factor_weights": [[2,1,7],[2,1,3]], "alpha_beta": [[9,1]], "window": [1,2],
          "strategy": "B", "objective": "kendall"})");
  EXPECT_EQ(g.factor_weights.size(), 2u);
  EXPECT_EQ(g.strategy, Strategy::kB);
  EXPECT_EQ(g.objective, Objective::kKendall);
  EXPECT_EQ(expand(g).size(), 4u);
  EXPECT_THROW(parse_grid_json(R"({"factor_weights": [[1,2]]})"), ConfigError);
  EXPECT_THROW(parse_grid_json(R"({"alpha_beta": [[0,0]]})"), ConfigError);
  EXPECT_THROW(parse_grid_json(R"({"extra": 1})"), ConfigError);
}

TEST(ReadNumbers, ParsesAndRejects) {
  TempDir dir;
  EXPECT_EQ(read_numbers(dir.write("n", "1\n 2.5 \n-3e-1\n")), (std::vector<double>{1, 2.5, -0.3}));
  EXPECT_THROW(read_numbers(dir.write("bad", "1\nabc\n")), InputError);
  EXPECT_THROW(read_numbers(dir.write("blank", "1\n\n2\n")), InputError);
}

namespace {

std::vector<SegmentScore> score_lines(const std::vector<std::pair<std::string, std::string>>& rows,
                                      const ParamSet& p, Metric m) {
  Corpus c;
  for (const auto& [h, r] : rows) c.segments.emplace_back(tokenize(h), std::vector<Sentence>{tokenize(r)});
  return score_corpus(c, p, m);
}

}  // namespace

TEST(EmitReport, TsvRows) {
  const ParamSet p;
  const auto scores = score_lines({{"a b c", "a b c"}, {"the cat sat", "the cat sat down"}, {"", "x"}},
                                  p, Metric::kLepor);
  const auto sys = system_score(scores, Metric::kLepor, Strategy::kA, p);
  const std::string tsv = emit_report(scores, sys, ReportFormat::kTsv, Level::kSentence, p);
  const std::string expected_head =
      "index\tLP\tNPD\tNPosPenal\tP\tR\tHPR\tscore\tdegenerate\n"
      "1\t1.000000\t0.000000\t1.000000\t1.000000\t1.000000\t1.000000\t1.000000\t0\n";
  EXPECT_EQ(tsv.substr(0, expected_head.size()), expected_head);
  EXPECT_NE(tsv.find("2\t0.716531\t0.166667\t0.846482\t1.000000\t0.750000\t0.769231\t0.466562\t0\n"),
            std::string::npos);
  EXPECT_NE(tsv.find("3\t0.000000\t0.000000\t1.000000\t0.000000\t0.000000\t0.000000\t0.000000\t1\n"),
            std::string::npos);
  EXPECT_EQ(tsv.back(), '\n');
  EXPECT_EQ(tsv.find("system"), std::string::npos);

  const auto sys_b = system_score(scores, Metric::kLepor, Strategy::kB, p);
  const std::string tsv_b = emit_report(scores, sys_b, ReportFormat::kTsv, Level::kSystemB, p);
  EXPECT_NE(tsv_b.find("system-B\t"), std::string::npos);
}

TEST(EmitReport, JsonRoundTrip) {
  ParamSet p;
  p.ngram_weights = {0.6, 0.4};
  const auto scores = score_lines({{"a b c d", "a b d c"}, {"x y z", "x z y w"}}, p, Metric::kNlepor);
  const auto sys = system_score(scores, Metric::kNlepor, Strategy::kB, p);
  const std::string text = emit_report(scores, sys, ReportFormat::kJson, Level::kSystemB, p);
  EXPECT_EQ(text, emit_report(scores, sys, ReportFormat::kJson, Level::kSystemB, p));

  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["metric"], "nlepor");
  EXPECT_EQ(j["system"]["strategy"], "B");
  EXPECT_NEAR(j["system"]["score"].get<double>(), sys.score, 5e-7);
  EXPECT_EQ(j["params"]["ngram_weights"].size(), 2u);
  ASSERT_EQ(j["segments"].size(), scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& row = j["segments"][i];
    EXPECT_NEAR(row["LP"].get<double>(), scores[i].word.lp, 5e-7);
    EXPECT_NEAR(row["NPD"].get<double>(), scores[i].word.npd, 5e-7);
    EXPECT_NEAR(row["HPR"].get<double>(), scores[i].word.hpr, 5e-7);
    EXPECT_NEAR(row["score"].get<double>(), scores[i].score, 5e-7);
  }
}

TEST(EmitTuneReport, Deterministic) {
  TuneResult r;
  r.best = ParamSet{};
  r.best_objective = 0.75;
  r.table.push_back({ParamSet{}, {0.1, 0.2}, 0.75});
  r.table.push_back({ParamSet{}, {0.2, 0.2}, std::nullopt});
  const std::string text = emit_tune_report(r, GridSpec{}, Metric::kHlepor);
  const auto j = nlohmann::json::parse(text);
  EXPECT_TRUE(j["grid"][1]["objective"].is_null());
  EXPECT_EQ(j["best"]["objective"].get<double>(), 0.75);
}

TEST(FormatFixed, SixDecimals) {
  EXPECT_EQ(format_fixed(0.5), "0.500000");
  EXPECT_EQ(format_fixed(-0.0000001), "0.000000");
  EXPECT_EQ(format_fixed(1.0 / 3.0), "0.333333");
}
