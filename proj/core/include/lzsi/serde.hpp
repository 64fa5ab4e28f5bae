#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lzsi {

// Failure modes when loading a serialized structure. Each maps to a distinct
// error so callers (and tests) can tell a corrupt file from a wrong one.
enum class load_error_kind {
  bad_magic,
  unsupported_version,
  truncated,
  checksum_mismatch,
  bad_section,
};

class load_error : public std::runtime_error {
public:
  load_error(load_error_kind k, const std::string& what)
      : std::runtime_error(what), kind_(k) {}
  load_error_kind kind() const noexcept { return kind_; }

private:
  load_error_kind kind_;
};

namespace detail {

// Little-endian byte sink. All container integers go through this.
class byte_writer {
public:
  void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u16(uint16_t v);
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f64(double v);
  void bytes(const void* p, size_t len);

  const std::string& data() const { return buf_; }
  std::string take() { return std::move(buf_); }
  size_t size() const { return buf_.size(); }

private:
  std::string buf_;
};

// Bounded little-endian reader; overruns raise load_error(truncated).
class byte_reader {
public:
  explicit byte_reader(std::span<const uint8_t> s) : data_(s) {}

  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  uint64_t u64();
  double f64();
  void bytes(void* p, size_t len);
  std::span<const uint8_t> raw(size_t len);

  size_t remaining() const { return data_.size() - pos_; }

private:
  void need(size_t len) const;
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

// Bit stream, LSB-first within each byte.
class bit_writer {
public:
  void bit(bool b);
  void bits(uint64_t v, unsigned n);  // low n bits of v, LSB first
  const std::vector<uint8_t>& data() const { return buf_; }
  uint64_t bit_size() const { return nbits_; }

private:
  std::vector<uint8_t> buf_;
  uint64_t nbits_ = 0;
};

class bit_reader {
public:
  explicit bit_reader(std::span<const uint8_t> s) : data_(s) {}
  bool bit();
  uint64_t bits(unsigned n);
  void seek(uint64_t bitpos) { pos_ = bitpos; }
  uint64_t tell() const { return pos_; }

private:
  std::span<const uint8_t> data_;
  uint64_t pos_ = 0;
};

uint32_t crc32(std::span<const uint8_t> data);

// Fixed-width packed array: u8 width, u64 count, then count*width bits.
void write_packed(byte_writer& w, const std::vector<uint64_t>& values);
std::vector<uint64_t> read_packed(byte_reader& r);

// Width needed to store v (at least 1 bit).
unsigned width_for(uint64_t v);

// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(uint64_t x);

// Random access into a packed word buffer.
uint64_t bit_slice(std::span<const uint64_t> words, uint64_t bitpos, unsigned w);
void bit_store(std::vector<uint64_t>& words, uint64_t bitpos, unsigned w, uint64_t v);

}  // namespace detail
}  // namespace lzsi
