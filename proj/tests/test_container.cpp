#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "tercode/container.hpp"
#include "tercode/huffman.hpp"

using namespace tercode;
using testutil::code_of;

namespace {

EncodedStream sample_stream(std::mt19937_64& rng, std::size_t k, std::size_t len) {
  std::string ternary(len, '0');
  for (auto& c : ternary) c = "01X"[rng() % 3];
  const auto input = partition(TernaryString{trits_from_string(ternary), len}, k);
  std::vector<MatchingVector> table;
  for (int i = 0; i < 4; ++i) {
    std::string v(k, 'U');
    for (auto& c : v) c = "01U"[rng() % 3];
    table.push_back(MatchingVector::from_string(v));
  }
  table.push_back(MatchingVector::all_unspecified(k));
  const Covering cov = cover(input, table);
  return encode_all(input, cov, build_huffman(cov.frequencies), table, len);
}

}  // namespace

TEST_CASE("container round-trips a stream") {
  std::mt19937_64 rng(51);
  EncodedStream s = sample_stream(rng, 6, 100);
  CHECK(read_container(write_container(s)) == s);

  s.pattern_width = 25;
  const auto bytes = write_container(s);
  CHECK(read_container(bytes) == s);
  CHECK(write_container(s) == bytes);
}

TEST_CASE("container header layout") {
  std::mt19937_64 rng(52);
  const EncodedStream s = sample_stream(rng, 5, 40);
  const auto bytes = write_container(s);
  REQUIRE(bytes.size() > 25);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "TCC1");
  CHECK(bytes[4] == kContainerVersion);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 5);
  CHECK(bytes.size() == container_overhead_bytes(s) + (s.payload_bits() + 7) / 8);
}

TEST_CASE("container rejects damaged input") {
  std::mt19937_64 rng(53);
  EncodedStream s = sample_stream(rng, 4, 64);
  s.pattern_width = 8;
  const auto good = write_container(s);

  auto bad_magic = good;
  bad_magic[0] ^= 0xff;
  CHECK(code_of([&] { read_container(bad_magic); }) == ErrorCode::BadMagic);

  auto bad_version = good;
  bad_version[4] = 2;
  CHECK(code_of([&] { read_container(bad_version); }) == ErrorCode::UnsupportedVersion);

  const std::size_t body = good.size() - (1 + 4 + 8 + 4);
  for (std::size_t cut = 0; cut < good.size(); ++cut) {
    if (cut == body) continue;  // a valid container with no extension
    const std::span<const std::uint8_t> prefix(good.data(), cut);
    const auto code = code_of([&] { read_container(prefix); });
    CHECK_MESSAGE((code == ErrorCode::CorruptHeader || (cut < 4 && code == ErrorCode::BadMagic)), cut);
  }

  CHECK(read_container(std::span<const std::uint8_t>(good.data(), body)).pattern_width == std::nullopt);

  auto flipped = good;
  flipped[body - 6] ^= 0x01;
  CHECK(code_of([&] { read_container(flipped); }) == ErrorCode::ChecksumMismatch);

  auto bad_ext = good;
  bad_ext[good.size() - 6] ^= 0x01;
  CHECK(code_of([&] { read_container(bad_ext); }) == ErrorCode::ChecksumMismatch);
}

TEST_CASE("container skips unknown extension records") {
  std::mt19937_64 rng(54);
  const EncodedStream s = sample_stream(rng, 3, 30);
  auto bytes = write_container(s);
  // tag 200, length 2, data, then a CRC-32 over tag/length/data
  const std::vector<std::uint8_t> record{200, 0, 0, 0, 2, 0xab, 0xcd};
  bytes.insert(bytes.end(), record.begin(), record.end());
  const std::uint32_t crc = 0xc93c01d3u;  // zlib crc32 of `record`
  CHECK(code_of([&] {
          auto bad = bytes;
          for (int i = 0; i < 4; ++i) bad.push_back(0);
          read_container(bad);
        }) == ErrorCode::ChecksumMismatch);
  for (int shift = 24; shift >= 0; shift -= 8) bytes.push_back(static_cast<std::uint8_t>(crc >> shift));
  CHECK(read_container(bytes) == s);
}
