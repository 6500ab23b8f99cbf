#include "lepor/aligner.hpp"

#include <cstdint>
#include <stdexcept>

namespace lepor {
namespace {

bool has_context_match(const Sentence& hyp, std::size_t x, const Sentence& ref, std::size_t y,
                       std::size_t window) {
  const auto hx = static_cast<std::ptrdiff_t>(x);
  const auto ry = static_cast<std::ptrdiff_t>(y);
  const auto hn = static_cast<std::ptrdiff_t>(hyp.length());
  const auto rn = static_cast<std::ptrdiff_t>(ref.length());
  const auto w = static_cast<std::ptrdiff_t>(window);
  for (std::ptrdiff_t k = -w; k <= w; ++k) {
    if (k == 0) continue;
    const auto hi = hx + k;
    const auto ri = ry + k;
    if (hi < 0 || hi >= hn || ri < 0 || ri >= rn) continue;
    if (hyp[static_cast<std::size_t>(hi)] == ref[static_cast<std::size_t>(ri)]) return true;
  }
  return false;
}

// |(x+1)/c - (y+1)/r| as an exact fraction num / (c * r).
struct Distance {
  std::uint64_t num;
  std::uint64_t den;
};

Distance position_distance(std::size_t x, std::size_t c, std::size_t y, std::size_t r) {
  const std::uint64_t a = (x + 1) * static_cast<std::uint64_t>(r);
  const std::uint64_t b = (y + 1) * static_cast<std::uint64_t>(c);
  return {a > b ? a - b : b - a, static_cast<std::uint64_t>(c) * r};
}

bool closer(const Distance& lhs, const Distance& rhs) {
  return static_cast<unsigned __int128>(lhs.num) * rhs.den <
         static_cast<unsigned __int128>(rhs.num) * lhs.den;
}

}  // namespace

Alignment align(const Sentence& hyp, std::span<const Sentence> refs, std::size_t window) {
  if (window == 0) throw std::invalid_argument("alignment window must be positive");
  if (refs.empty()) throw std::invalid_argument("alignment needs at least one reference");

  Alignment out;
  out.hyp_length = hyp.length();
  out.ref_lengths.reserve(refs.size());
  std::vector<std::vector<bool>> claimed;
  claimed.reserve(refs.size());
  for (const auto& r : refs) {
    out.ref_lengths.push_back(r.length());
    claimed.emplace_back(r.length(), false);
  }

  const std::size_t c = hyp.length();
  for (std::size_t x = 0; x < c; ++x) {
    bool found = false;
    bool best_in_context = false;
    AlignedPair best{x, 0, 0};
    Distance best_dist{};
    // Candidates are visited in (ref_id, ref_index) order, so a strict
    // improvement test keeps the lowest ids on exact ties.
    for (std::size_t rid = 0; rid < refs.size(); ++rid) {
      const Sentence& ref = refs[rid];
      for (std::size_t y = 0; y < ref.length(); ++y) {
        if (claimed[rid][y] || ref[y] != hyp[x]) continue;
        const bool in_context = has_context_match(hyp, x, ref, y, window);
        const Distance dist = position_distance(x, c, y, ref.length());
        bool take = false;
        if (!found) {
          take = true;
        } else if (in_context != best_in_context) {
          take = in_context;
        } else {
          take = closer(dist, best_dist);
        }
        if (take) {
          found = true;
          best_in_context = in_context;
          best = {x, rid, y};
          best_dist = dist;
        }
      }
    }
    if (found) {
      claimed[best.ref_id][best.ref_index] = true;
      out.pairs.push_back(best);
    }
  }
  return out;
}

}  // namespace lepor
