#include "lzsi/plain_bitmap.hpp"

#include <bit>
#include <stdexcept>

namespace lzsi {

namespace {
constexpr uint64_t kWordsPerSuper = 8;
}

plain_bitmap::plain_bitmap(uint64_t nbits) : n_(nbits) {
  words_.assign((nbits + 63) / 64, 0);
}

void plain_bitmap::set(uint64_t i) {
  words_[(i - 1) >> 6] |= uint64_t{1} << ((i - 1) & 63);
}

bool plain_bitmap::get(uint64_t i) const {
  if (i < 1 || i > n_) throw std::out_of_range("plain_bitmap::get: position out of range");
  return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
}

void plain_bitmap::finalize() {
  super_.assign(words_.size() / kWordsPerSuper + 1, 0);
  block_.assign(words_.size(), 0);
  uint64_t total = 0, in_super = 0;
  for (uint64_t wi = 0; wi < words_.size(); ++wi) {
    if (wi % kWordsPerSuper == 0) {
      super_[wi / kWordsPerSuper] = total;
      in_super = 0;
    }
    block_[wi] = static_cast<uint16_t>(in_super);
    uint64_t pc = std::popcount(words_[wi]);
    total += pc;
    in_super += pc;
  }
  if (words_.size() % kWordsPerSuper == 0) super_.back() = total;
  ones_ = total;
}

void plain_bitmap::check_rank(uint64_t i) const {
  if (i > n_) throw std::out_of_range("plain_bitmap::rank: position out of range");
}

uint64_t plain_bitmap::rank1(uint64_t i) const {
  check_rank(i);
  if (i == 0) return 0;
  uint64_t wi = (i - 1) >> 6;
  unsigned inword = ((i - 1) & 63) + 1;
  uint64_t mask = inword == 64 ? ~uint64_t{0} : (uint64_t{1} << inword) - 1;
  return super_[wi / kWordsPerSuper] + block_[wi] + std::popcount(words_[wi] & mask);
}

namespace {

// Position (1..64) of the k-th set bit in w; k <= popcount(w).
unsigned word_select(uint64_t w, unsigned k) {
  for (unsigned byte = 0; byte < 8; ++byte) {
    unsigned pc = std::popcount(static_cast<unsigned>((w >> (8 * byte)) & 0xff));
    if (k > pc) {
      k -= pc;
      continue;
    }
    for (unsigned bit = 0; bit < 8; ++bit) {
      if ((w >> (8 * byte + bit)) & 1) {
        if (--k == 0) return 8 * byte + bit + 1;
      }
    }
  }
  return 0;  // unreachable for valid k
}

}  // namespace

uint64_t plain_bitmap::select1(uint64_t k) const {
  if (k < 1 || k > ones_) throw std::out_of_range("plain_bitmap::select1: rank out of range");
  // superblock: last with super_ < k
  uint64_t lo = 0, hi = super_.size() - 1;
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (super_[mid] < k) lo = mid;
    else hi = mid - 1;
  }
  uint64_t rem = k - super_[lo];
  uint64_t wi = lo * kWordsPerSuper;
  while (true) {
    uint64_t pc = std::popcount(words_[wi]);
    if (rem <= pc) break;
    rem -= pc;
    ++wi;
  }
  return wi * 64 + word_select(words_[wi], static_cast<unsigned>(rem));
}

uint64_t plain_bitmap::select0(uint64_t k) const {
  if (k < 1 || k > zeros()) throw std::out_of_range("plain_bitmap::select0: rank out of range");
  uint64_t lo = 0, hi = super_.size() - 1;
  // zeros before superblock s = s*512 - super_[s]
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    uint64_t zeros_before = mid * kWordsPerSuper * 64 - super_[mid];
    if (zeros_before < k) lo = mid;
    else hi = mid - 1;
  }
  uint64_t rem = k - (lo * kWordsPerSuper * 64 - super_[lo]);
  uint64_t wi = lo * kWordsPerSuper;
  while (true) {
    uint64_t pc = 64 - std::popcount(words_[wi]);
    if (rem <= pc) break;
    rem -= pc;
    ++wi;
  }
  return wi * 64 + word_select(~words_[wi], static_cast<unsigned>(rem));
}

void plain_bitmap::serialize(detail::byte_writer& w) const {
  w.u64(n_);
  size_t nbytes = (n_ + 7) / 8;
  w.bytes(words_.data(), nbytes);
}

plain_bitmap plain_bitmap::deserialize(detail::byte_reader& r) {
  uint64_t n = r.u64();
  plain_bitmap bm(n);
  size_t nbytes = (n + 7) / 8;
  auto raw = r.raw(nbytes);
  for (size_t i = 0; i < nbytes; ++i)
    bm.words_[i / 8] |= static_cast<uint64_t>(raw[i]) << (8 * (i % 8));
  bm.finalize();
  return bm;
}

}  // namespace lzsi
