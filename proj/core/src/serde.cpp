#include "lzsi/serde.hpp"

#include <bit>
#include <cstring>

#include <zlib.h>

namespace lzsi::detail {

void byte_writer::u16(uint16_t v) {
  u8(static_cast<uint8_t>(v));
  u8(static_cast<uint8_t>(v >> 8));
}

void byte_writer::u32(uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
}

void byte_writer::u64(uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
}

void byte_writer::f64(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  u64(bits);
}

void byte_writer::bytes(const void* p, size_t len) {
  buf_.append(static_cast<const char*>(p), len);
}

void byte_reader::need(size_t len) const {
  if (pos_ + len > data_.size())
    throw load_error(load_error_kind::truncated, "truncated section");
}

uint8_t byte_reader::u8() {
  need(1);
  return data_[pos_++];
}

uint16_t byte_reader::u16() {
  need(2);
  uint16_t v = static_cast<uint16_t>(data_[pos_]) |
               static_cast<uint16_t>(data_[pos_ + 1]) << 8;
  pos_ += 2;
  return v;
}

uint32_t byte_reader::u32() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

uint64_t byte_reader::u64() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

double byte_reader::f64() {
  uint64_t bits = u64();
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

void byte_reader::bytes(void* p, size_t len) {
  need(len);
  std::memcpy(p, data_.data() + pos_, len);
  pos_ += len;
}

std::span<const uint8_t> byte_reader::raw(size_t len) {
  need(len);
  auto s = data_.subspan(pos_, len);
  pos_ += len;
  return s;
}

void bit_writer::bit(bool b) {
  if (nbits_ % 8 == 0) buf_.push_back(0);
  if (b) buf_.back() |= static_cast<uint8_t>(1u << (nbits_ % 8));
  ++nbits_;
}

void bit_writer::bits(uint64_t v, unsigned n) {
  for (unsigned i = 0; i < n; ++i) bit((v >> i) & 1);
}

bool bit_reader::bit() {
  uint64_t byte = pos_ >> 3;
  if (byte >= data_.size())
    throw load_error(load_error_kind::truncated, "truncated bit stream");
  bool b = (data_[byte] >> (pos_ & 7)) & 1;
  ++pos_;
  return b;
}

uint64_t bit_reader::bits(unsigned n) {
  uint64_t v = 0;
  for (unsigned i = 0; i < n; ++i)
    if (bit()) v |= uint64_t{1} << i;
  return v;
}

uint32_t crc32(std::span<const uint8_t> data) {
  uLong c = ::crc32(0L, Z_NULL, 0);
  size_t off = 0;
  while (off < data.size()) {
    uInt chunk = static_cast<uInt>(std::min<size_t>(data.size() - off, 1u << 30));
    c = ::crc32(c, data.data() + off, chunk);
    off += chunk;
  }
  return static_cast<uint32_t>(c);
}

unsigned width_for(uint64_t v) {
  unsigned w = std::bit_width(v);
  return w ? w : 1;
}

unsigned ceil_log2(uint64_t x) {
  return x <= 1 ? 0 : std::bit_width(x - 1);
}

uint64_t bit_slice(std::span<const uint64_t> words, uint64_t bitpos, unsigned w) {
  uint64_t wi = bitpos >> 6;
  unsigned off = bitpos & 63;
  uint64_t lo = words[wi] >> off;
  if (off + w > 64) lo |= words[wi + 1] << (64 - off);
  return w == 64 ? lo : lo & ((uint64_t{1} << w) - 1);
}

void bit_store(std::vector<uint64_t>& words, uint64_t bitpos, unsigned w, uint64_t v) {
  uint64_t wi = bitpos >> 6;
  unsigned off = bitpos & 63;
  while (words.size() <= (bitpos + w - 1) / 64) words.push_back(0);
  words[wi] |= v << off;
  if (off + w > 64) words[wi + 1] |= v >> (64 - off);
}

void write_packed(byte_writer& w, const std::vector<uint64_t>& values) {
  uint64_t mx = 0;
  for (uint64_t v : values) mx = std::max(mx, v);
  unsigned width = width_for(mx);
  w.u8(static_cast<uint8_t>(width));
  w.u64(values.size());
  std::vector<uint64_t> words((values.size() * width + 63) / 64 + 1, 0);
  uint64_t pos = 0;
  for (uint64_t v : values) {
    bit_store(words, pos, width, v);
    pos += width;
  }
  size_t nbytes = (values.size() * width + 7) / 8;
  w.bytes(words.data(), nbytes);
}

std::vector<uint64_t> read_packed(byte_reader& r) {
  unsigned width = r.u8();
  if (width == 0 || width > 64)
    throw load_error(load_error_kind::bad_section, "invalid packed width");
  uint64_t count = r.u64();
  size_t nbytes = (count * width + 7) / 8;
  auto raw = r.raw(nbytes);
  std::vector<uint64_t> words(nbytes / 8 + 2, 0);
  std::memcpy(words.data(), raw.data(), nbytes);
  std::vector<uint64_t> out(count);
  uint64_t pos = 0;
  for (uint64_t i = 0; i < count; ++i) {
    out[i] = bit_slice(words, pos, width);
    pos += width;
  }
  return out;
}

}  // namespace lzsi::detail
