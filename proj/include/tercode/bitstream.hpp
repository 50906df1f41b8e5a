#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tercode {

/// Growable bit sequence, packed MSB-first within each byte. Bits past
/// size() in the final byte are always zero, so byte-wise equality is bit-wise
/// equality.
class BitBuffer {
 public:
  BitBuffer() = default;
  /// Adopts `bytes` as the first `bit_count` bits; trailing pad bits are cleared.
  BitBuffer(std::vector<std::uint8_t> bytes, std::uint64_t bit_count);
  /// "0110" style, for tests and reports.
  static BitBuffer from_string(const std::string& bits);

  void push_back(bool bit);
  /// Appends the low `count` bits of `bits`, most significant first.
  void append(std::uint64_t bits, unsigned count);
  void append(const BitBuffer& other);

  bool operator[](std::uint64_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }
  std::uint64_t size() const noexcept { return bit_count_; }
  bool empty() const noexcept { return bit_count_ == 0; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  void reserve_bits(std::uint64_t bits) { bytes_.reserve((bits + 7) / 8); }

  std::string to_string() const;

  friend bool operator==(const BitBuffer&, const BitBuffer&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_count_ = 0;
};

/// Sequential MSB-first reader over a BitBuffer.
class BitReader {
 public:
  explicit BitReader(const BitBuffer& buf) noexcept : buf_(&buf) {}

  bool at_end() const noexcept { return pos_ >= buf_->size(); }
  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return buf_->size() - pos_; }
  /// Caller checks at_end() first.
  bool read_bit() noexcept { return (*buf_)[pos_++]; }

 private:
  const BitBuffer* buf_;
  std::uint64_t pos_ = 0;
};

}  // namespace tercode
