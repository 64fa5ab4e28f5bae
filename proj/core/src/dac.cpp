#include "lzsi/dac.hpp"

#include <stdexcept>

namespace lzsi {

dac::dac(std::span<const uint64_t> values, uint32_t chunk_width)
    : width_(chunk_width), size_(values.size()) {
  if (width_ < 1 || width_ > 64) throw std::invalid_argument("dac: chunk_width must be in [1,64]");
  std::vector<uint64_t> cur(values.begin(), values.end());
  while (!cur.empty()) {
    std::vector<uint64_t> words;
    plain_bitmap cont(cur.size());
    std::vector<uint64_t> next;
    uint64_t mask = width_ == 64 ? ~uint64_t{0} : (uint64_t{1} << width_) - 1;
    for (size_t i = 0; i < cur.size(); ++i) {
      detail::bit_store(words, i * width_, width_, cur[i] & mask);
      uint64_t rest = width_ == 64 ? 0 : cur[i] >> width_;
      if (rest != 0) {
        cont.set(i + 1);
        next.push_back(rest);
      }
    }
    cont.finalize();
    chunk_words_.push_back(std::move(words));
    level_sizes_.push_back(cur.size());
    cont_.push_back(std::move(cont));
    cur = std::move(next);
  }
}

uint64_t dac::chunk(uint64_t level, uint64_t idx) const {
  return detail::bit_slice(chunk_words_[level], (idx - 1) * width_, width_);
}

uint64_t dac::access(uint64_t i) const {
  if (i < 1 || i > size_) throw std::out_of_range("dac::access: index out of range");
  uint64_t idx = i;
  uint64_t v = chunk(0, idx);
  unsigned shift = width_;
  uint64_t level = 0;
  while (cont_[level].get(idx)) {
    idx = cont_[level].rank1(idx);
    ++level;
    v |= chunk(level, idx) << shift;
    shift += width_;
  }
  return v;
}

void dac::serialize(detail::byte_writer& w) const {
  w.u8(static_cast<uint8_t>(width_));
  w.u64(size_);
  w.u64(cont_.size());
  for (size_t lvl = 0; lvl < cont_.size(); ++lvl) {
    w.u64(level_sizes_[lvl]);
    size_t nbytes = (level_sizes_[lvl] * width_ + 7) / 8;
    w.bytes(chunk_words_[lvl].data(), nbytes);
    cont_[lvl].serialize(w);
  }
}

dac dac::deserialize(detail::byte_reader& r) {
  dac d;
  d.width_ = r.u8();
  if (d.width_ < 1 || d.width_ > 64)
    throw load_error(load_error_kind::bad_section, "invalid dac chunk width");
  d.size_ = r.u64();
  uint64_t nlevels = r.u64();
  for (uint64_t lvl = 0; lvl < nlevels; ++lvl) {
    uint64_t sz = r.u64();
    size_t nbytes = (sz * d.width_ + 7) / 8;
    auto raw = r.raw(nbytes);
    std::vector<uint64_t> words(nbytes / 8 + 2, 0);
    for (size_t i = 0; i < nbytes; ++i)
      words[i / 8] |= static_cast<uint64_t>(raw[i]) << (8 * (i % 8));
    d.chunk_words_.push_back(std::move(words));
    d.level_sizes_.push_back(sz);
    d.cont_.push_back(plain_bitmap::deserialize(r));
    if (d.cont_.back().size() != sz)
      throw load_error(load_error_kind::bad_section, "dac level shape mismatch");
  }
  if (nlevels == 0 && d.size_ != 0)
    throw load_error(load_error_kind::bad_section, "dac missing levels");
  if (nlevels > 0 && d.level_sizes_[0] != d.size_)
    throw load_error(load_error_kind::bad_section, "dac level shape mismatch");
  return d;
}

}  // namespace lzsi
