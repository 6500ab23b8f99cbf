#include "lepor/text_model.hpp"

#include <cmath>
#include <numeric>

#include "lepor/error.hpp"

namespace lepor {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

char32_t fold_code_point(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  // Latin-1: À..Þ except ×
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A alternates upper/lower, with the parity flipping twice.
  if ((cp >= 0x100 && cp <= 0x12F) || (cp >= 0x132 && cp <= 0x137) ||
      (cp >= 0x14A && cp <= 0x177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  // Greek capitals (U+03A2 is unassigned).
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

Sentence::Sentence(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (const auto& t : tokens_) {
    if (t.empty()) throw InputError("empty token");
    for (char c : t) {
      if (is_space(c)) throw InputError("token contains whitespace: '" + t + "'");
    }
  }
}

std::string Sentence::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens_[i];
  }
  return out;
}

TaggedSentence::TaggedSentence(Sentence sentence, std::vector<std::string> tags)
    : sentence_(std::move(sentence)), tags_(std::move(tags)) {
  if (tags_.size() != sentence_.length()) {
    throw InputError("tag count " + std::to_string(tags_.size()) + " does not match token count " +
                     std::to_string(sentence_.length()));
  }
}

Segment::Segment(Sentence hypothesis, std::vector<Sentence> references,
                 std::optional<PosLayer> pos)
    : hypothesis_(std::move(hypothesis)), references_(std::move(references)), pos_(std::move(pos)) {
  if (references_.empty()) throw InputError("segment has no references");
  if (pos_ && pos_->references.size() != references_.size()) {
    throw InputError("POS tags must be present for the hypothesis and every reference");
  }
}

ParamSet validate_params(const ParamSet& p) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(p.alpha)) throw ConfigError("alpha must be non-negative");
  if (!finite_nonneg(p.beta)) throw ConfigError("beta must be non-negative");
  if (!(p.alpha + p.beta > 0.0)) throw ConfigError("alpha+beta must be positive");
  if (!finite_nonneg(p.w_lp)) throw ConfigError("w_lp must be non-negative");
  if (!finite_nonneg(p.w_npos)) throw ConfigError("w_npos must be non-negative");
  if (!finite_nonneg(p.w_hpr)) throw ConfigError("w_hpr must be non-negative");
  if (!(p.w_lp + p.w_npos + p.w_hpr > 0.0)) {
    throw ConfigError("w_lp+w_npos+w_hpr must be positive");
  }
  if (p.ngram_weights.empty()) throw ConfigError("ngram weights must not be empty");
  for (double w : p.ngram_weights) {
    if (!finite_nonneg(w)) throw ConfigError("ngram weights must be non-negative");
  }
  const double sum = std::accumulate(p.ngram_weights.begin(), p.ngram_weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("ngram weights must sum to 1");
  if (p.context_window < 1) throw ConfigError("window must be positive");
  if (!finite_nonneg(p.w_hw)) throw ConfigError("w_hw must be non-negative");
  if (!finite_nonneg(p.w_hp)) throw ConfigError("w_hp must be non-negative");
  if (!(p.w_hw + p.w_hp > 0.0)) throw ConfigError("w_hw+w_hp must be positive");
  return p;
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool valid = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (!valid) {
      // Malformed byte: copy through untouched.
      out.push_back(text[i]);
      ++i;
      continue;
    }
    const char32_t folded = fold_code_point(cp);
    if (folded == cp) {
      out.append(text.substr(i, len));
    } else {
      append_utf8(out, folded);
    }
    i += len;
  }
  return out;
}

Sentence tokenize(std::string_view line, bool fold) {
  auto tokens = split_whitespace(line);
  if (fold) {
    for (auto& t : tokens) t = fold_case(t);
  }
  return Sentence(std::move(tokens));
}

}  // namespace lepor
