#pragma once

// On-disk container for an EncodedStream. All integers big-endian.
//
//   "TCC1"                      magic, 4 bytes
//   u8   version                = 1
//   u16  K                      block length
//   u16  L                      effective MV count
//   u64  block_count
//   u64  original_length
//   L x  MV entry               K symbols x 2 bits (00=0, 01=1, 10=U),
//                               MSB-first, padded to a whole byte
//   L x  codeword entry         u8 length, then the bits MSB-first,
//                               padded to a whole byte
//   u64  payload bit length
//        payload bits           MSB-first, padded to a whole byte
//   u32  CRC-32 of every byte above
//
// Zero or more extension records may follow the CRC. Each is
//
//   u8 tag · u32 length · data[length] · u32 CRC-32 of (tag, length, data)
//
// Unknown tags are skipped. Tag 1 carries the pattern width as a u64.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tercode/codec.hpp"

namespace tercode {

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::uint8_t kExtensionPatternWidth = 1;

std::vector<std::uint8_t> write_container(const EncodedStream& stream);
/// Throws BadMagic, UnsupportedVersion, CorruptHeader, ChecksumMismatch.
EncodedStream read_container(std::span<const std::uint8_t> bytes);

/// Bytes the container spends on everything except payload bits.
std::uint64_t container_overhead_bytes(const EncodedStream& stream);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace tercode
