#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lzsi/parsing.hpp"

namespace lzsi::oracle {

// Brute-force baselines, deliberately independent of the succinct, patricia
// and index modules. Everything here scans plainly; keep inputs small.

// All 1-based start positions of pattern in text. Empty patterns are invalid.
std::vector<uint64_t> naive_locate(std::string_view text, std::string_view pattern);

// Source depths by pairwise cover checks with memoized recursion, in S-order.
depth_assignment naive_depths(const parsing& p);

// Largest s' < s with depths[s'] < d, by linear backward scan.
std::optional<uint64_t> naive_prev_less(std::span<const uint32_t> depths, uint64_t s,
                                        uint64_t d);

struct classified_occurrences {
  std::vector<uint64_t> primary;
  std::vector<uint64_t> secondary;
};

// Splits naive_locate output into occurrences touching a phrase boundary
// (covering more than one phrase or ending exactly at one) and the rest.
classified_occurrences naive_classify(std::string_view text, const parsing& p,
                                      std::string_view pattern);

}  // namespace lzsi::oracle
