#include "tercode/container.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "tercode/error.hpp"

namespace tercode {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'T', 'C', 'C', '1'};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - off, 1u << 30);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<std::uint32_t>(crc);
}

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { be(v, 2); }
  void u32(std::uint32_t v) { be(v, 4); }
  void u64(std::uint64_t v) { be(v, 8); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t>& buffer() noexcept { return out_; }

 private:
  void be(std::uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(be(4)); }
  std::uint64_t u64() { return be(8); }
  std::span<const std::uint8_t> take(std::uint64_t n) {
    need(n);
    auto s = in_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return s;
  }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  void need(std::uint64_t n) const {
    if (n > remaining()) {
      throw Error(ErrorCode::CorruptHeader, "container truncated at byte " + std::to_string(pos_));
    }
  }
  std::uint64_t be(int n) {
    need(static_cast<std::uint64_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::size_t mv_entry_bytes(std::size_t k) { return (2 * k + 7) / 8; }

void put_mv(ByteWriter& w, const MatchingVector& v) {
  BitBuffer bits;
  for (MvSymbol s : v.symbols()) {
    switch (s) {
      case MvSymbol::Zero: bits.append(0b00, 2); break;
      case MvSymbol::One: bits.append(0b01, 2); break;
      case MvSymbol::U: bits.append(0b10, 2); break;
    }
  }
  w.bytes(bits.bytes());
}

MatchingVector get_mv(ByteReader& r, std::size_t k) {
  const auto raw = r.take(mv_entry_bytes(k));
  const BitBuffer bits(std::vector<std::uint8_t>(raw.begin(), raw.end()), 2 * k);
  if (bits.bytes() != std::vector<std::uint8_t>(raw.begin(), raw.end())) {
    throw Error(ErrorCode::CorruptHeader, "nonzero padding in MV entry");
  }
  std::vector<MvSymbol> syms;
  syms.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const unsigned code = (static_cast<unsigned>(bits[2 * j]) << 1) | bits[2 * j + 1];
    switch (code) {
      case 0b00: syms.push_back(MvSymbol::Zero); break;
      case 0b01: syms.push_back(MvSymbol::One); break;
      case 0b10: syms.push_back(MvSymbol::U); break;
      default: throw Error(ErrorCode::CorruptHeader, "invalid MV symbol code 11");
    }
  }
  return MatchingVector(std::move(syms));
}

void put_codeword(ByteWriter& w, const Codeword& cw) {
  w.u8(static_cast<std::uint8_t>(cw.length));
  BitBuffer bits;
  bits.append(cw.bits, cw.length);
  w.bytes(bits.bytes());
}

Codeword get_codeword(ByteReader& r) {
  const unsigned len = r.u8();
  if (len > kMaxCodewordLength) {
    throw Error(ErrorCode::CorruptHeader, "codeword length " + std::to_string(len));
  }
  const auto raw = r.take((len + 7) / 8);
  const BitBuffer bits(std::vector<std::uint8_t>(raw.begin(), raw.end()), len);
  if (bits.bytes() != std::vector<std::uint8_t>(raw.begin(), raw.end())) {
    throw Error(ErrorCode::CorruptHeader, "nonzero padding in codeword entry");
  }
  Codeword cw;
  cw.length = len;
  for (unsigned i = 0; i < len; ++i) cw.bits = (cw.bits << 1) | static_cast<std::uint64_t>(bits[i]);
  return cw;
}

}  // namespace

std::vector<std::uint8_t> write_container(const EncodedStream& s) {
  if (s.block_length == 0 || s.block_length > 0xffff) {
    throw Error(ErrorCode::InvalidConfig, "block length out of container range");
  }
  if (s.mvs.size() > 0xffff) throw Error(ErrorCode::InvalidConfig, "too many matching vectors");
  if (s.codebook.size() != s.mvs.size() || s.codebook.entry_count() != s.mvs.size()) {
    throw Error(ErrorCode::InvalidConfig, "every table entry needs a codeword");
  }

  ByteWriter w;
  w.bytes(kMagic);
  w.u8(kContainerVersion);
  w.u16(static_cast<std::uint16_t>(s.block_length));
  w.u16(static_cast<std::uint16_t>(s.mvs.size()));
  w.u64(s.block_count);
  w.u64(s.original_length);
  for (const auto& v : s.mvs) {
    if (v.size() != s.block_length) throw Error(ErrorCode::LengthMismatch, "MV length differs from K");
    put_mv(w, v);
  }
  for (std::size_t i = 0; i < s.mvs.size(); ++i) put_codeword(w, s.codebook.at(i));
  w.u64(s.payload.size());
  w.bytes(s.payload.bytes());
  w.u32(crc32_of(w.buffer()));

  if (s.pattern_width) {
    ByteWriter ext;
    ext.u8(kExtensionPatternWidth);
    ext.u32(8);
    ext.u64(*s.pattern_width);
    ext.u32(crc32_of(ext.buffer()));
    w.bytes(ext.buffer());
  }
  return std::move(w.buffer());
}

EncodedStream read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size()) throw Error(ErrorCode::CorruptHeader, "container too short");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not a TCC1 container");
  }
  ByteReader r(bytes.subspan(kMagic.size()));
  const std::uint8_t version = r.u8();
  if (version != kContainerVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(version));
  }

  EncodedStream s;
  s.block_length = r.u16();
  const std::size_t n_mvs = r.u16();
  s.block_count = r.u64();
  s.original_length = r.u64();
  if (s.block_length == 0 || s.block_length > kMaxBlockLength) {
    throw Error(ErrorCode::CorruptHeader, "block length " + std::to_string(s.block_length));
  }
  s.mvs.reserve(n_mvs);
  for (std::size_t i = 0; i < n_mvs; ++i) s.mvs.push_back(get_mv(r, s.block_length));
  s.codebook = Codebook(n_mvs);
  for (std::size_t i = 0; i < n_mvs; ++i) s.codebook.set(i, get_codeword(r));
  const std::uint64_t payload_bits = r.u64();
  if (payload_bits / 8 > r.remaining()) throw Error(ErrorCode::CorruptHeader, "payload truncated");
  const auto raw = r.take((payload_bits + 7) / 8);
  const std::size_t body_end = kMagic.size() + r.position();
  const std::uint32_t stored_crc = r.u32();
  if (crc32_of(bytes.first(body_end)) != stored_crc) {
    throw Error(ErrorCode::ChecksumMismatch, "container CRC mismatch");
  }
  s.payload = BitBuffer(std::vector<std::uint8_t>(raw.begin(), raw.end()), payload_bits);
  if (s.payload.bytes() != std::vector<std::uint8_t>(raw.begin(), raw.end())) {
    throw Error(ErrorCode::CorruptHeader, "nonzero padding after payload");
  }
  if (s.block_count != (s.original_length + s.block_length - 1) / s.block_length) {
    throw Error(ErrorCode::CorruptHeader, "block count inconsistent with original length");
  }
  if (!s.codebook.is_prefix_free()) throw Error(ErrorCode::CorruptHeader, "codebook is not prefix-free");

  while (r.remaining() > 0) {
    const std::size_t start = kMagic.size() + r.position();
    const std::uint8_t tag = r.u8();
    const std::uint32_t len = r.u32();
    const auto data = r.take(len);
    const std::size_t end = kMagic.size() + r.position();
    if (crc32_of(bytes.subspan(start, end - start)) != r.u32()) {
      throw Error(ErrorCode::ChecksumMismatch, "extension record CRC mismatch");
    }
    if (tag == kExtensionPatternWidth) {
      if (len != 8) throw Error(ErrorCode::CorruptHeader, "pattern width record size");
      ByteReader dr(data);
      s.pattern_width = dr.u64();
    }
  }
  return s;
}

std::uint64_t container_overhead_bytes(const EncodedStream& stream) {
  return write_container(stream).size() - stream.payload.bytes().size();
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tercode
