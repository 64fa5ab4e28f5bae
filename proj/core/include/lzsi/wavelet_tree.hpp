#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lzsi/plain_bitmap.hpp"

namespace lzsi {

// Balanced wavelet tree over [0, max_symbol], pointerless: one concatenated
// bitmap per level, nodes located by rank arithmetic during descent. Supports
// access/rank/select, orthogonal range reporting, and prev_less (the largest
// position before s holding a symbol below a threshold).
class wavelet_tree {
public:
  wavelet_tree() = default;
  explicit wavelet_tree(std::span<const uint64_t> seq);  // max inferred from data
  wavelet_tree(std::span<const uint64_t> seq, uint64_t max_symbol);

  uint64_t size() const { return n_; }
  uint64_t max_symbol() const { return max_; }
  uint64_t height() const { return levels_.size(); }

  uint64_t access(uint64_t i) const;                 // i in [1, size()]
  uint64_t rank(uint64_t symbol, uint64_t i) const;  // i in [0, size()]
  uint64_t select(uint64_t symbol, uint64_t k) const;

  // All (position, symbol) pairs with position in [i_lo, i_hi] and symbol in
  // [j_lo, j_hi]. Empty position ranges (i_lo > i_hi) yield an empty result.
  std::vector<std::pair<uint64_t, uint64_t>> range_report(
      uint64_t i_lo, uint64_t i_hi, uint64_t j_lo, uint64_t j_hi) const;

  // Largest s' < s with seq[s'] < d, if any. s in [1, size()+1], d in
  // [0, max_symbol()+1].
  std::optional<uint64_t> prev_less(uint64_t s, uint64_t d) const;

  void serialize(detail::byte_writer& w) const;
  static wavelet_tree deserialize(detail::byte_reader& r);

private:
  struct node {
    uint64_t start;  // slice start within the level, 1-based
    uint64_t size;
    uint64_t lo, hi;  // symbol range
  };
  struct frame {
    uint32_t level;
    uint64_t start;
    bool right;
  };

  void build(std::span<const uint64_t> seq);
  node root() const { return {1, n_, 0, max_}; }
  uint64_t slice_rank1(uint32_t level, const node& nd, uint64_t i) const;
  node child(uint32_t level, const node& nd, bool right) const;
  uint64_t climb(std::span<const frame> path, uint64_t pos) const;
  void report_rec(uint32_t level, const node& nd, uint64_t a, uint64_t b,
                  uint64_t j_lo, uint64_t j_hi, std::vector<frame>& path,
                  std::vector<std::pair<uint64_t, uint64_t>>& out) const;
  uint64_t prev_less_rec(uint32_t level, const node& nd, uint64_t t, uint64_t d) const;

  uint64_t n_ = 0;
  uint64_t max_ = 0;
  std::vector<plain_bitmap> levels_;
};

}  // namespace lzsi
