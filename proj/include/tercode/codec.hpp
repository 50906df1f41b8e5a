#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tercode/bitstream.hpp"
#include "tercode/core.hpp"
#include "tercode/huffman.hpp"
#include "tercode/kernels.hpp"
#include "tercode/matching.hpp"

namespace tercode {

/// Per-block MV choice plus per-MV use counts. Indices refer to the MV list
/// as passed in, not to the N_U-sorted scan order.
struct Covering {
  std::vector<std::size_t> assignment;
  std::vector<std::uint64_t> frequencies;

  friend bool operator==(const Covering&, const Covering&) = default;
};

/// MV indices stably sorted by increasing N_U. This is the order in which
/// cover() tries MVs against a block.
std::vector<std::size_t> cover_order(std::span<const MatchingVector> mvs);

/// Assigns every block the first matching MV in cover_order(). Throws
/// UnmatchedBlock (detail = 1-based block index) if some block has no match,
/// LengthMismatch if lengths disagree.
Covering cover(std::span<const InputBlock> blocks, std::span<const MatchingVector> mvs);

/// Distinct packed blocks with multiplicities, in order of first appearance.
/// Covering only depends on block content, so the search works on this.
struct BlockSet {
  std::size_t block_length = 0;
  std::vector<PackedBlock> unique;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  static BlockSet build(std::span<const InputBlock> blocks);
};

/// Covering over a BlockSet. assignment[u] is the MV index for unique block u
/// or kernels::kNoMatch; unmatched_blocks counts blocks (with multiplicity).
struct CoverTally {
  std::vector<std::uint32_t> assignment;
  std::vector<std::uint64_t> frequencies;
  std::uint64_t unmatched_blocks = 0;

  bool feasible() const noexcept { return unmatched_blocks == 0; }
};

CoverTally cover_tally(const BlockSet& blocks, std::span<const MatchingVector> mvs);

/// |C(v)| + N_U(v). Throws NoCodeword.
std::uint64_t encoding_length(const MatchingVector& v, const Codebook& book, std::size_t index);

/// Sum over MVs of F_i * (|C_i| + N_U_i). Throws NoCodeword for a used MV
/// without codeword.
std::uint64_t payload_bits(std::span<const std::uint64_t> frequencies, const Codebook& book,
                           std::span<const MatchingVector> mvs);

/// payload_bits() under a fresh Huffman code for `frequencies`.
std::uint64_t huffman_payload_bits(std::span<const std::uint64_t> frequencies,
                                   std::span<const MatchingVector> mvs);

enum class FillMode : std::uint8_t { Zero, One, Random };

/// Value transmitted for an X that lands on a U position.
struct FillPolicy {
  FillMode mode = FillMode::Zero;
  std::uint64_t seed = 0;

  /// Pure in (seed, block, position) so encoding stays deterministic.
  bool fill_bit(std::size_t block_index, std::size_t position) const noexcept;
};

/// C(v) followed by the block's values at v's U positions. Throws NotMatching.
BitBuffer encode_block(const InputBlock& ib, const MatchingVector& v, const Codeword& cw,
                       FillPolicy fill = {});
/// Codebook form; throws NoCodeword as well.
BitBuffer encode_block(const InputBlock& ib, const MatchingVector& v, const Codebook& book,
                       std::size_t index, FillPolicy fill = {});

struct EncodedStream {
  std::size_t block_length = 0;
  /// Effective MV table: only MVs that carry a codeword.
  std::vector<MatchingVector> mvs;
  /// Same indexing as `mvs`, one codeword per entry.
  Codebook codebook;
  std::uint64_t block_count = 0;
  std::uint64_t original_length = 0;
  BitBuffer payload;
  /// Pattern width n, stored as an optional container extension.
  std::optional<std::uint64_t> pattern_width;

  std::uint64_t payload_bits() const noexcept { return payload.size(); }

  friend bool operator==(const EncodedStream&, const EncodedStream&) = default;
};

/// Concatenates per-block encodings in block order. MVs without a codeword
/// are dropped from the stream's table and the codebook is reindexed.
EncodedStream encode_all(std::span<const InputBlock> blocks, const Covering& covering,
                         const Codebook& book, std::span<const MatchingVector> mvs,
                         std::uint64_t original_length, FillPolicy fill = {});

/// Reconstructs the fully specified bit string ('0'/'1', original_length
/// long). Throws TruncatedPayload, DanglingBits, UnknownCodeword.
std::string decode(const EncodedStream& stream);

/// 100 * (original - payload) / original; negative when the payload is larger.
/// Throws ZeroOriginal.
double compression_rate(std::uint64_t original_bits, std::uint64_t payload_bits);

/// Result of the subsumption post-pass.
struct SubsumeResult {
  Covering covering;
  /// active[i] is false for MVs whose blocks were all moved elsewhere.
  std::vector<bool> active;
  std::uint64_t payload_bits = 0;
  std::size_t merges = 0;
};

/// Greedy subsumption: repeatedly moves all blocks of MV j onto another used
/// MV i that matches every one of them, accepting the first (j, i) pair in
/// increasing index order that strictly lowers the Huffman-coded payload.
/// Stops at a fixed point.
SubsumeResult subsume_merge(std::span<const InputBlock> blocks, const Covering& covering,
                            std::span<const MatchingVector> mvs);

/// BlockSet variant used during fitness evaluation; updates `tally` in place
/// and returns the resulting payload bits.
std::uint64_t subsume_merge(const BlockSet& blocks, CoverTally& tally,
                            std::span<const MatchingVector> mvs);

}  // namespace tercode
