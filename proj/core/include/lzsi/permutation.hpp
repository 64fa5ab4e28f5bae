#pragma once

#include <cstdint>
#include <vector>

#include "lzsi/plain_bitmap.hpp"

namespace lzsi {

// Permutation of [1, n] with constant-time apply and O(shortcut_period)
// inverse: every period-th element along each cycle carries a back-pointer
// jumping period steps against the cycle direction.
class permutation {
public:
  permutation() = default;
  permutation(std::vector<uint64_t> forward, uint64_t shortcut_period);

  uint64_t size() const { return fwd_.size(); }
  uint64_t period() const { return period_; }

  uint64_t apply(uint64_t i) const;    // P[i]
  uint64_t inverse(uint64_t j) const;  // P^{-1}[j]

  void serialize(detail::byte_writer& w) const;
  static permutation deserialize(detail::byte_reader& r);

private:
  void build_shortcuts();

  std::vector<uint64_t> fwd_;
  plain_bitmap flags_;
  std::vector<uint64_t> shortcuts_;
  uint64_t period_ = 1;
};

}  // namespace lzsi
