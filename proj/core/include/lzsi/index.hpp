#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lzsi/parsing.hpp"
#include "lzsi/patricia.hpp"
#include "lzsi/permutation.hpp"
#include "lzsi/sparse_bitmap.hpp"
#include "lzsi/wavelet_tree.hpp"

namespace lzsi {

struct index_config {
  parse_flavor flavor = parse_flavor::lz77;
  // 1: suffix trie + reverse trie, 2: binary search on explicit id + reverse
  // trie, 3: suffix trie + binary search on rev_id, 4: binary search on
  // explicit id + on rev_id, 5: binary search on implicit id + on rev_id.
  int variant = 5;
  uint64_t bitmap_sample_rate = 32;
  uint64_t perm_shortcut_period = 0;  // 0: max(1, ceil(log2 n'))
  uint32_t dac_chunk_width = 4;
};

struct occurrence_set {
  std::vector<uint64_t> positions;  // sorted, distinct, 1-based
  uint64_t primary_count = 0;
  uint64_t secondary_count = 0;
};

struct primary_hit {
  uint64_t position;
  uint64_t phrase;  // phrase whose suffix is the left part
  uint32_t split;   // length of the left part
};

struct extract_stats {
  uint64_t max_depth = 0;  // deepest source-following nesting
  uint64_t steps = 0;      // emitted characters plus resolver invocations
};

struct index_stats {
  uint64_t n = 0, n_prime = 0, sigma = 0, h = 0, delta = 0;
  double avg_copy_count = 0.0;
  double avg_source_depth = 0.0;
  uint64_t lz_bits = 0;  // n' * (2 ceil(log n) + ceil(log sigma))
  std::vector<std::pair<std::string, uint64_t>> component_bytes;
  uint64_t total_bytes = 0;
};

// Self-index over an LZ77 or LZ-End parsing. Stores the phrase last
// characters L, the phrase-end bitmap B, the source-layout bitmap S, the
// phrase-to-source permutation P, source depths D and the trie-linking
// sequence R (both as wavelet trees), plus per-variant search structures.
// Immutable after build; any number of threads may query concurrently.
class lz_index {
public:
  lz_index() = default;

  static lz_index build(std::string_view text, const index_config& cfg = {});

  uint64_t text_size() const { return n_; }
  uint64_t phrase_count() const { return np_; }
  uint64_t sigma() const { return sigma_; }
  uint64_t height() const { return h_; }
  uint64_t delta() const { return delta_; }
  parse_flavor flavor() const { return cfg_.flavor; }
  int variant() const { return cfg_.variant; }
  const index_config& config() const { return cfg_; }

  // Text recovery through the compressed structures only.
  std::string extract(uint64_t s, uint64_t e) const;
  std::string extract(uint64_t s, uint64_t e, extract_stats& st) const;
  uint8_t char_at(uint64_t pos) const;

  bool exists(std::string_view pattern) const;
  std::vector<primary_hit> find_primary(std::string_view pattern) const;
  occurrence_set locate(std::string_view pattern) const;

  // Secondary occurrences reachable from one confirmed occurrence, in
  // discovery order (recursive source chase; the seed itself is not listed).
  std::vector<uint64_t> chase_from(uint64_t pos, uint64_t len) const;

  index_stats stats() const;

  void serialize(std::ostream& out) const;
  std::string serialize_to_string() const;
  static lz_index deserialize(std::string_view bytes);
  static lz_index deserialize(std::istream& in);

  // Structure access, mainly for tests and diagnostics.
  const std::string& last_chars() const { return lchars_; }
  const sparse_bitmap& end_bitmap() const { return b_; }
  const sparse_bitmap& source_bitmap() const { return s_; }
  const permutation& source_perm() const { return perm_; }
  const wavelet_tree& depth_tree() const { return dwt_; }
  const wavelet_tree& range_tree() const { return rwt_; }
  const std::vector<uint64_t>& reverse_order() const { return rev_id_; }
  uint64_t suffix_id(uint64_t rank) const;  // id[rank] regardless of storage
  search_range suffix_search(std::string_view key) const;
  search_range reverse_search(std::string_view key) const;
  const patricia_tree* suffix_trie() const { return suffix_trie_.get(); }
  const patricia_tree* reverse_trie() const { return reverse_trie_.get(); }

  uint64_t phrase_start(uint64_t k) const;
  uint64_t phrase_end(uint64_t k) const { return b_.select1(k); }

private:
  void build_sides(std::string_view text, const std::vector<uint64_t>& id,
                   const std::vector<uint64_t>& starts);
  void extract_rec(uint64_t s, uint64_t e, uint64_t depth, std::string& out,
                   extract_stats& st) const;
  void chase_step(uint64_t pos, uint64_t len, std::vector<uint64_t>& found) const;
  patricia_tree::char_accessor suffix_accessor() const;
  patricia_tree::char_accessor reverse_accessor() const;
  std::vector<std::pair<std::string, std::string>> build_sections() const;

  index_config cfg_;
  uint64_t n_ = 0, np_ = 0, sigma_ = 0, h_ = 0, delta_ = 0;
  double avg_c_ = 0.0, avg_depth_ = 0.0;

  std::string lchars_;     // L
  sparse_bitmap b_;        // phrase ends over [1, n]
  sparse_bitmap s_;        // source layout over [1, n + n' + 1]
  permutation perm_;       // P
  wavelet_tree dwt_;       // D over [0, delta]
  wavelet_tree rwt_;       // R over [0, n']
  std::vector<uint64_t> rev_id_;
  std::vector<uint64_t> id_;  // variants 2 and 4 only
  uint64_t sentinel_row_ = 0;  // suffix rank with R = 0 (phrase 1)
  uint64_t rev_rank_last_ = 0; // reverse rank of the final phrase
  std::unique_ptr<patricia_tree> suffix_trie_;
  std::unique_ptr<patricia_tree> reverse_trie_;
};

}  // namespace lzsi
