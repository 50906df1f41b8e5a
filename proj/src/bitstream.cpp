#include "tercode/bitstream.hpp"

#include "tercode/error.hpp"

namespace tercode {

BitBuffer::BitBuffer(std::vector<std::uint8_t> bytes, std::uint64_t bit_count)
    : bytes_(std::move(bytes)), bit_count_(bit_count) {
  if (bytes_.size() != (bit_count_ + 7) / 8) {
    throw Error(ErrorCode::LengthMismatch, "byte count does not match bit count");
  }
  if (const unsigned tail = bit_count_ & 7; tail != 0) {
    bytes_.back() &= static_cast<std::uint8_t>(0xffu << (8 - tail));
  }
}

BitBuffer BitBuffer::from_string(const std::string& bits) {
  BitBuffer b;
  for (char c : bits) {
    if (c == '0' || c == '1') {
      b.push_back(c == '1');
    } else if (c != ' ' && c != '.' && c != '\'') {
      throw Error(ErrorCode::IllegalCharacter, "bit string character '" + std::string(1, c) + "'");
    }
  }
  return b;
}

void BitBuffer::push_back(bool bit) {
  if ((bit_count_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ & 7));
  ++bit_count_;
}

void BitBuffer::append(std::uint64_t bits, unsigned count) {
  for (unsigned i = count; i-- > 0;) push_back((bits >> i) & 1u);
}

void BitBuffer::append(const BitBuffer& other) {
  if ((bit_count_ & 7) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    bit_count_ += other.bit_count_;
    return;
  }
  for (std::uint64_t i = 0; i < other.size(); ++i) push_back(other[i]);
}

std::string BitBuffer::to_string() const {
  std::string s;
  s.reserve(bit_count_);
  for (std::uint64_t i = 0; i < bit_count_; ++i) s.push_back((*this)[i] ? '1' : '0');
  return s;
}

}  // namespace tercode
