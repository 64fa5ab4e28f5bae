#include "lzsi/sparse_bitmap.hpp"

#include <bit>
#include <stdexcept>

namespace lzsi {

namespace {

void delta_encode(detail::bit_writer& bw, uint64_t g) {
  // gamma(len) followed by the len-1 low bits of g, MSB first
  unsigned len = std::bit_width(g);
  unsigned lb = std::bit_width(static_cast<uint64_t>(len));
  for (unsigned i = 0; i + 1 < lb; ++i) bw.bit(false);
  for (unsigned i = lb; i-- > 0;) bw.bit((len >> i) & 1);
  for (unsigned i = len - 1; i-- > 0;) bw.bit((g >> i) & 1);
}

uint64_t delta_decode(detail::bit_reader& br) {
  unsigned zeros = 0;
  while (!br.bit()) ++zeros;
  uint64_t len = 1;
  for (unsigned i = 0; i < zeros; ++i) len = (len << 1) | (br.bit() ? 1 : 0);
  uint64_t g = 1;
  for (uint64_t i = 1; i < len; ++i) g = (g << 1) | (br.bit() ? 1 : 0);
  return g;
}

}  // namespace

sparse_bitmap::sparse_bitmap(std::span<const uint64_t> positions, uint64_t universe,
                             uint64_t sample_rate)
    : universe_(universe), ones_(positions.size()), rate_(sample_rate) {
  if (rate_ < 1) throw std::invalid_argument("sparse_bitmap: sample_rate must be >= 1");
  detail::bit_writer bw;
  uint64_t prev = 0;
  for (size_t i = 0; i < positions.size(); ++i) {
    uint64_t p = positions[i];
    if (p <= prev) throw std::invalid_argument("sparse_bitmap: positions must be strictly increasing");
    if (p > universe_) throw std::invalid_argument("sparse_bitmap: position exceeds universe");
    delta_encode(bw, p - prev);
    if (i % rate_ == 0) samples_.push_back({p, bw.bit_size()});
    prev = p;
  }
  gaps_ = bw.data();
}

uint64_t sparse_bitmap::next_gap(uint64_t& off) const {
  detail::bit_reader br(gaps_);
  br.seek(off);
  uint64_t g = delta_decode(br);
  off = br.tell();
  return g;
}

sparse_bitmap::cursor sparse_bitmap::cursor_at(uint64_t sample_idx) const {
  const sample& s = samples_[sample_idx];
  return {sample_idx * rate_ + 1, s.pos, s.offset};
}

uint64_t sparse_bitmap::rank1(uint64_t i) const {
  if (i > universe_) throw std::out_of_range("sparse_bitmap::rank: position out of range");
  if (ones_ == 0 || i == 0 || i < samples_[0].pos) return 0;
  // last sample with pos <= i
  uint64_t lo = 0, hi = samples_.size() - 1;
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (samples_[mid].pos <= i) lo = mid;
    else hi = mid - 1;
  }
  cursor c = cursor_at(lo);
  while (c.idx < ones_) {
    uint64_t off = c.off;
    uint64_t next = c.pos + next_gap(off);
    if (next > i) break;
    c = {c.idx + 1, next, off};
  }
  return c.idx;
}

uint64_t sparse_bitmap::select1(uint64_t k) const {
  if (k < 1 || k > ones_) throw std::out_of_range("sparse_bitmap::select1: rank out of range");
  cursor c = cursor_at((k - 1) / rate_);
  while (c.idx < k) {
    c.pos += next_gap(c.off);
    ++c.idx;
  }
  return c.pos;
}

uint64_t sparse_bitmap::select0(uint64_t k) const {
  if (k < 1 || k > zeros()) throw std::out_of_range("sparse_bitmap::select0: rank out of range");
  if (ones_ == 0 || samples_[0].pos - 1 >= k) return k;
  // find the last 1 (index j) with pos_j - j < k; answer is k + j
  uint64_t lo = 0, hi = samples_.size() - 1;
  while (lo < hi) {
    uint64_t mid = (lo + hi + 1) / 2;
    if (samples_[mid].pos - (mid * rate_ + 1) < k) lo = mid;
    else hi = mid - 1;
  }
  cursor c = cursor_at(lo);
  while (c.idx < ones_) {
    uint64_t off = c.off;
    uint64_t next = c.pos + next_gap(off);
    if (next - (c.idx + 1) >= k) break;
    c = {c.idx + 1, next, off};
  }
  return k + c.idx;
}

bool sparse_bitmap::get(uint64_t i) const {
  if (i < 1 || i > universe_) throw std::out_of_range("sparse_bitmap::get: position out of range");
  return rank1(i) != rank1(i - 1);
}

void sparse_bitmap::serialize(detail::byte_writer& w) const {
  w.u64(universe_);
  w.u64(ones_);
  w.u64(rate_);
  w.u64(gaps_.size());
  w.bytes(gaps_.data(), gaps_.size());
}

sparse_bitmap sparse_bitmap::deserialize(detail::byte_reader& r) {
  sparse_bitmap bm;
  bm.universe_ = r.u64();
  bm.ones_ = r.u64();
  bm.rate_ = r.u64();
  if (bm.rate_ < 1) throw load_error(load_error_kind::bad_section, "invalid sample rate");
  uint64_t len = r.u64();
  auto raw = r.raw(len);
  bm.gaps_.assign(raw.begin(), raw.end());
  // rebuild samples by decoding the whole stream once
  detail::bit_reader br(bm.gaps_);
  uint64_t pos = 0;
  for (uint64_t i = 0; i < bm.ones_; ++i) {
    pos += delta_decode(br);
    if (pos > bm.universe_)
      throw load_error(load_error_kind::bad_section, "gap stream exceeds universe");
    if (i % bm.rate_ == 0) bm.samples_.push_back({pos, br.tell()});
    else if (br.tell() > 8 * bm.gaps_.size())
      throw load_error(load_error_kind::truncated, "truncated gap stream");
  }
  return bm;
}

}  // namespace lzsi
