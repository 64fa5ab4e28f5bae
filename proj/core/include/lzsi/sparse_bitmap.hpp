#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzsi/serde.hpp"

namespace lzsi {

// Sparse bitmap storing only the set positions, as Elias-delta coded gaps
// between consecutive 1s (the first gap is the first position). Every
// sample_rate-th 1 keeps its absolute position plus the bit offset of the
// following code, so select decodes at most sample_rate codes and rank adds
// one binary search over the samples.
class sparse_bitmap {
public:
  sparse_bitmap() = default;

  // positions: strictly increasing 1-based set positions, each <= universe.
  sparse_bitmap(std::span<const uint64_t> positions, uint64_t universe,
                uint64_t sample_rate = 32);

  uint64_t universe() const { return universe_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return universe_ - ones_; }
  uint64_t sample_rate() const { return rate_; }

  bool get(uint64_t i) const;
  uint64_t rank1(uint64_t i) const;  // i in [0, universe]
  uint64_t rank0(uint64_t i) const { return i - rank1(i); }
  uint64_t select1(uint64_t k) const;  // k in [1, ones]
  uint64_t select0(uint64_t k) const;  // k in [1, zeros]

  void serialize(detail::byte_writer& w) const;
  static sparse_bitmap deserialize(detail::byte_reader& r);

private:
  struct sample {
    uint64_t pos;     // position of 1 number (idx*rate + 1)
    uint64_t offset;  // bit offset just past that 1's gap code
  };

  void build_samples();
  // Decoding cursor starting at sample t: 1 number t*rate+1.
  struct cursor {
    uint64_t idx;  // 1-based index of the current 1
    uint64_t pos;  // its position
    uint64_t off;  // bit offset of the next gap code
  };
  cursor cursor_at(uint64_t sample_idx) const;
  uint64_t next_gap(uint64_t& off) const;

  uint64_t universe_ = 0;
  uint64_t ones_ = 0;
  uint64_t rate_ = 32;
  std::vector<uint8_t> gaps_;
  std::vector<sample> samples_;
};

}  // namespace lzsi
