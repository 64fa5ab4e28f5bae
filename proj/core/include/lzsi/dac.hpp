#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzsi/plain_bitmap.hpp"

namespace lzsi {

// Directly addressable codes: values chopped into chunk_width-bit pieces,
// one array per level, with a continuation bitmap per level for random
// access into variable-length codes.
class dac {
public:
  dac() = default;
  dac(std::span<const uint64_t> values, uint32_t chunk_width);

  uint64_t size() const { return size_; }
  uint32_t chunk_width() const { return width_; }
  uint64_t levels() const { return cont_.size(); }

  uint64_t access(uint64_t i) const;  // i in [1, size()]

  void serialize(detail::byte_writer& w) const;
  static dac deserialize(detail::byte_reader& r);

private:
  uint64_t chunk(uint64_t level, uint64_t idx) const;

  uint32_t width_ = 4;
  uint64_t size_ = 0;
  std::vector<std::vector<uint64_t>> chunk_words_;
  std::vector<uint64_t> level_sizes_;
  std::vector<plain_bitmap> cont_;
};

}  // namespace lzsi
