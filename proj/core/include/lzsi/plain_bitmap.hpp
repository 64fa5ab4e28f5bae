#pragma once

#include <cstdint>
#include <vector>

#include "lzsi/serde.hpp"

namespace lzsi {

// Uncompressed bitmap with a two-level rank directory. Positions are 1-based,
// rank(i) counts bits in [1,i]. Used for wavelet-tree node bitmaps and other
// dense payloads; the gap-coded sparse_bitmap covers the sparse cases.
class plain_bitmap {
public:
  plain_bitmap() = default;
  explicit plain_bitmap(uint64_t nbits);

  void set(uint64_t i);  // build phase only; i in [1, size()]
  void finalize();       // builds the rank directory

  uint64_t size() const { return n_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return n_ - ones_; }
  bool get(uint64_t i) const;

  uint64_t rank1(uint64_t i) const;  // i in [0, size()]
  uint64_t rank0(uint64_t i) const { return i - rank1(i); }
  uint64_t select1(uint64_t k) const;  // k in [1, ones()]
  uint64_t select0(uint64_t k) const;  // k in [1, zeros()]

  void serialize(detail::byte_writer& w) const;
  static plain_bitmap deserialize(detail::byte_reader& r);

private:
  void check_rank(uint64_t i) const;

  std::vector<uint64_t> words_;
  std::vector<uint64_t> super_;   // ones before each superblock (8 words)
  std::vector<uint16_t> block_;   // ones before each word, within superblock
  uint64_t n_ = 0;
  uint64_t ones_ = 0;
};

}  // namespace lzsi
