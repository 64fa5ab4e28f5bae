#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lzsi/serde.hpp"

namespace lzsi {

enum class parse_flavor : uint8_t { lz77 = 0, lzend = 1 };

// One parsing unit: a copied part (possibly empty) plus one explicit byte.
// copy_start is the 1-based text position of the source, 0 when empty.
struct phrase {
  uint64_t copy_start = 0;
  uint64_t copy_len = 0;
  uint8_t last = 0;
  uint64_t length() const { return copy_len + 1; }
};

struct parsing {
  parse_flavor flavor = parse_flavor::lz77;
  uint64_t text_len = 0;
  std::vector<phrase> phrases;

  uint64_t size() const { return phrases.size(); }
  std::string decode() const;
  std::vector<uint64_t> phrase_ends() const;

  void serialize(detail::byte_writer& w) const;
  static parsing deserialize(detail::byte_reader& r);
};

// Greedy parsings. Each phrase copies the longest prefix of the remaining
// text that occurs strictly inside the processed prefix (lz77) or that is a
// suffix of some earlier phrase-aligned prefix (lzend), then appends one
// explicit byte. Among equally long sources the leftmost occurrence wins.
// A match reaching the end of the text is shortened so the final byte of the
// text is always explicit.
parsing parse_lz77(std::string_view text);
parsing parse_lzend(std::string_view text);

struct parse_violation {
  enum class kind { reconstruction, containment, maximality, boundary };
  kind what;
  uint64_t phrase_index;  // 1-based; 0 when not tied to a phrase
  std::string detail;
};

// Checks reconstruction, source containment, greedy maximality (skipping the
// possibly truncated final phrase), and for lzend that sources end on phrase
// boundaries. Returns the first violation found, or nullopt when the parsing
// is consistent with the text.
std::optional<parse_violation> validate_parsing(const parsing& p, std::string_view text);

struct height_report {
  uint64_t h = 0;
  double avg_c = 0.0;
  std::vector<uint32_t> copy_counts;  // per text position, build-time only
};

// Copy-count recurrence: 1 at phrase ends, source count + 1 inside copied
// parts. h is the maximum.
height_report compute_height(const parsing& p);

struct depth_assignment {
  std::vector<uint32_t> depths;  // by source rank (S-order)
  uint32_t delta = 0;
};

// Nesting depth of each source under strict covering (cover = starts earlier,
// ends no earlier). Empty sources have depth 0. Output follows S-order.
depth_assignment compute_source_depths(const parsing& p);

// The canonical order of sources used by the index: sorted by (start, length,
// phrase number), empty sources first. target_rank is the permutation P.
struct source_layout {
  std::vector<uint64_t> order;        // order[r-1] = phrase number of rank-r source
  std::vector<uint64_t> target_rank;  // target_rank[k-1] = rank of phrase k's source
  std::vector<uint64_t> starts;       // starts[r-1], 0 for empty sources
  std::vector<uint64_t> lens;         // lens[r-1]
};
source_layout compute_source_order(const parsing& p);

}  // namespace lzsi
