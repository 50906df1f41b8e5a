#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tercode/codec.hpp"

namespace tercode::ninec {

/// Fixed nine-vector scheme: every MV is two K/2 half-blocks, each all-0,
/// all-1 or all-U.
struct NineCodeScheme {
  std::size_t block_length = 0;
  std::vector<MatchingVector> mvs;
  Codebook fixed_code;
};

/// In the order 00, 11, 01, 10, 1U, U1, 0U, U0, UU (half-blocks).
/// Throws OddK for odd or zero K.
std::vector<MatchingVector> nine_mvs(std::size_t block_length);

/// 0, 10, 11000, 11001, 11010, 11011, 11100, 11101, 11111, indexed like
/// nine_mvs(). 11110 is deliberately unused.
Codebook nine_codebook();

NineCodeScheme nine_code_scheme(std::size_t block_length);

struct NineCodeResult {
  std::vector<MatchingVector> mvs;
  Covering covering;
  /// Codebook over the nine MVs actually used for encoding.
  Codebook codebook;
  EncodedStream stream;
};

/// Covers with nine_mvs() and encodes either with the fixed table or with a
/// Huffman code over the measured frequencies (9C+HC). Never fails to cover.
NineCodeResult compress_9c(std::span<const InputBlock> blocks, std::size_t block_length,
                           bool recode_with_huffman, std::uint64_t original_length,
                           FillPolicy fill = {});

}  // namespace tercode::ninec
