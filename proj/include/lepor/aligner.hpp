#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lepor/text_model.hpp"

namespace lepor {

struct AlignedPair {
  std::size_t hyp_index;  // 0-based
  std::size_t ref_id;
  std::size_t ref_index;  // 0-based, within references[ref_id]

  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

/// A one-to-one partial matching from hypothesis positions to reference positions.
/// Pairs are ordered by hyp_index.
struct Alignment {
  std::vector<AlignedPair> pairs;
  std::size_t hyp_length = 0;
  std::vector<std::size_t> ref_lengths;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

/// Context-dependent n-gram word alignment.
///
/// The hypothesis is scanned left to right. Each token may align to any
/// unclaimed reference token with the same surface form, in any reference.
/// Candidates that share a neighbour with the hypothesis token (equal tokens at
/// the same signed offset k, 0 < |k| <= window) take priority over those that
/// do not. Among the surviving candidates the one whose relative position
/// (1-based position over its own sentence length) is closest to the
/// hypothesis token's relative position wins; exact ties go to the lower
/// reference id, then the lower reference position. A claimed reference token
/// is never offered again.
///
/// Throws std::invalid_argument if window is 0 or refs is empty.
Alignment align(const Sentence& hyp, std::span<const Sentence> refs, std::size_t window);

/// Number of aligned pairs.
inline std::size_t match_count(const Alignment& a) { return a.pairs.size(); }

}  // namespace lepor
