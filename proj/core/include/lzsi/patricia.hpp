#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lzsi/dac.hpp"

namespace lzsi {

// Leaf-rank interval produced by a prefix search. lo > hi encodes the empty
// range. verified is false when Patricia skips may have consumed pattern
// characters blindly, in which case one candidate must be checked against
// the text before the range is trusted.
struct search_range {
  uint64_t lo = 1;
  uint64_t hi = 0;
  bool verified = false;

  bool empty() const { return lo > hi; }
  uint64_t count() const { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const search_range&) const = default;
};

// Path-compressed trie over a lexicographically sorted string set, stored as
// compact integer arrays (children contiguous, sorted by first character);
// per-node skip lengths live in a DAC. Descent consumes skipped characters
// blindly, so nonempty results are unverified by construction.
class patricia_tree {
public:
  // Characters of the leaf strings: 0..255, or -1 past the end.
  using char_accessor = std::function<int(uint64_t leaf, uint64_t pos)>;

  patricia_tree() = default;

  // Strings must be given in sorted order; lengths[i] is the length of string
  // i+1. payloads, when present, ride along in leaf order.
  static patricia_tree build(const char_accessor& at, std::span<const uint64_t> lengths,
                             uint32_t skip_dac_width = 4,
                             std::vector<uint64_t> payloads = {});

  search_range search(std::span<const uint8_t> key) const;

  uint64_t node_count() const { return nodes_.size(); }
  uint64_t leaf_count() const { return leaf_count_; }
  const std::vector<uint64_t>& payloads() const { return payloads_; }

  // Test/diagnostic surface.
  uint64_t skip_of(uint64_t node) const { return skips_.access(node + 1); }
  uint64_t string_depth(uint64_t node) const;  // walks to the root
  bool is_leaf(uint64_t node) const { return nodes_[node].nchildren == 0; }
  std::pair<uint64_t, uint64_t> leaf_span(uint64_t node) const {
    return {nodes_[node].leaf_lo, nodes_[node].leaf_hi};
  }

  // Recompute every node's skip from the tree shape plus character access,
  // extracting one character at a time (build-time cross-check).
  std::vector<uint64_t> recompute_skips(const char_accessor& at) const;

  void serialize(detail::byte_writer& w) const;
  static patricia_tree deserialize(detail::byte_reader& r);

private:
  static constexpr int16_t kEndLabel = -1;  // string ends at the parent

  struct node {
    uint32_t first_child = 0;  // 0 = leaf (node 0 is always the root)
    uint32_t nchildren = 0;
    uint64_t leaf_lo = 0, leaf_hi = 0;
    int16_t label = 0;
    uint32_t parent = 0;  // for diagnostics
  };

  const node* find_child(const node& parent, int16_t label) const;

  std::vector<node> nodes_;
  dac skips_;
  uint64_t leaf_count_ = 0;
  std::vector<uint64_t> payloads_;
};

// Binary-search fallback with the same contract as patricia_tree::search but
// full comparisons (verified results). Strings are exposed through the
// accessor in sorted order; at query time that accessor is index extraction.
search_range binsearch_range(uint64_t count, const patricia_tree::char_accessor& at,
                             std::span<const uint8_t> key);

}  // namespace lzsi
