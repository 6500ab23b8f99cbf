#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lepor {

/// An ordered token sequence. Tokens are non-empty and contain no whitespace.
class Sentence {
 public:
  Sentence() = default;
  /// Throws InputError if a token is empty or contains whitespace.
  explicit Sentence(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t length() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }

  /// Tokens joined by single spaces.
  std::string canonical() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// A sentence paired with one POS tag per token.
class TaggedSentence {
 public:
  /// Throws InputError when the tag count differs from the token count.
  TaggedSentence(Sentence sentence, std::vector<std::string> tags);

  const Sentence& sentence() const { return sentence_; }
  const std::vector<std::string>& tags() const { return tags_; }
  /// The tags as a Sentence, so the word-level pipeline can run on them unchanged.
  Sentence tag_sequence() const { return Sentence(tags_); }

 private:
  Sentence sentence_;
  std::vector<std::string> tags_;
};

/// POS tag sequences for a segment's hypothesis and each of its references.
struct PosLayer {
  Sentence hypothesis;
  std::vector<Sentence> references;
};

/// One hypothesis with its parallel references.
class Segment {
 public:
  /// Throws InputError if references is empty, or if pos is given without one
  /// tag sequence per reference.
  Segment(Sentence hypothesis, std::vector<Sentence> references,
          std::optional<PosLayer> pos = std::nullopt);

  const Sentence& hypothesis() const { return hypothesis_; }
  const std::vector<Sentence>& references() const { return references_; }
  const std::optional<PosLayer>& pos() const { return pos_; }
  bool has_pos() const { return pos_.has_value(); }

 private:
  Sentence hypothesis_;
  std::vector<Sentence> references_;
  std::optional<PosLayer> pos_;
};

struct Corpus {
  std::vector<Segment> segments;
  std::size_t segment_count() const { return segments.size(); }
};

/// All tunable weights of the metric family.
struct ParamSet {
  double alpha = 9.0;  // recall weight
  double beta = 1.0;   // precision weight
  double w_lp = 1.0;
  double w_npos = 1.0;
  double w_hpr = 1.0;
  std::vector<double> ngram_weights{1.0};  // w_n for orders 1..N
  std::size_t context_window = 2;
  double w_hw = 1.0;
  double w_hp = 0.0;

  std::size_t max_order() const { return ngram_weights.size(); }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Returns p unchanged, or throws ConfigError naming the first violated invariant.
ParamSet validate_params(const ParamSet& p);

/// Splits on runs of whitespace; lower-cases each token unless fold_case is false.
Sentence tokenize(std::string_view line, bool fold_case = true);

/// Whitespace split with no case folding (for tag lines).
std::vector<std::string> split_whitespace(std::string_view line);

/// Simple case folding of a UTF-8 string. Covers ASCII, Latin-1, Latin
/// Extended-A, Greek and Cyrillic; other code points pass through.
std::string fold_case(std::string_view text);

}  // namespace lepor
