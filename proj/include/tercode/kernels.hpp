#pragma once

// Bit-parallel matching kernels.
//
// A block or matching vector of length K <= 64 is packed into two words:
// `care` has bit j set where position j is specified (0/1), `value` holds the
// specified bit at j. A block matches an MV iff
//
//     ((block.value ^ mv.value) & block.care & mv.care) == 0
//
// The covering hot loop asks, for every block, which MV in a sorted list is
// the first one to match. That loop has a scalar reference implementation and
// SIMD variants (AVX2 on x86-64, NEON on AArch64) that must return identical
// results; the variant is picked at runtime from what the CPU supports.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tercode/core.hpp"
#include "tercode/matching.hpp"

namespace tercode {

inline constexpr std::size_t kMaxBlockLength = 64;

struct PackedBlock {
  std::uint64_t care = 0;
  std::uint64_t value = 0;
  friend bool operator==(const PackedBlock&, const PackedBlock&) = default;
};

struct PackedMv {
  std::uint64_t care = 0;
  std::uint64_t value = 0;
  friend bool operator==(const PackedMv&, const PackedMv&) = default;
};

/// Throw UnsupportedBlockLength when the length exceeds kMaxBlockLength.
PackedBlock pack_block(const InputBlock& ib);
PackedMv pack_mv(const MatchingVector& v);

inline bool packed_matches(PackedMv v, PackedBlock b) noexcept {
  return ((b.value ^ v.value) & b.care & v.care) == 0;
}

namespace kernels {

inline constexpr std::uint32_t kNoMatch = 0xffffffffu;

/// Structure-of-arrays view over an ordered MV list.
struct MvColumns {
  std::span<const std::uint64_t> care;
  std::span<const std::uint64_t> value;

  std::size_t size() const noexcept { return care.size(); }
};

/// Owning SoA storage for MvColumns.
struct MvTable {
  std::vector<std::uint64_t> care;
  std::vector<std::uint64_t> value;

  void clear() noexcept {
    care.clear();
    value.clear();
  }
  void push_back(PackedMv mv) {
    care.push_back(mv.care);
    value.push_back(mv.value);
  }
  MvColumns columns() const noexcept { return {care, value}; }
};

enum class Isa : std::uint8_t { Scalar, Avx2, Neon };

const char* isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Widest variant the running CPU supports.
Isa best_isa() noexcept;
/// Variant used by the dispatching entry point. Defaults to best_isa(),
/// overridable with TERCODE_KERNEL={scalar,avx2,neon} or set_active_isa().
Isa active_isa() noexcept;
/// Throws InvalidConfig if the variant is not supported here.
void set_active_isa(Isa isa);

/// out[b] = position in `mvs` of the first MV that matches blocks[b], or
/// kNoMatch. `out.size()` must equal `blocks.size()`.
void first_match(std::span<const PackedBlock> blocks, MvColumns mvs,
                 std::span<std::uint32_t> out);
void first_match(Isa isa, std::span<const PackedBlock> blocks, MvColumns mvs,
                 std::span<std::uint32_t> out);

void first_match_scalar(std::span<const PackedBlock> blocks, MvColumns mvs,
                        std::span<std::uint32_t> out) noexcept;
#if defined(TERCODE_HAVE_AVX2)
void first_match_avx2(std::span<const PackedBlock> blocks, MvColumns mvs,
                      std::span<std::uint32_t> out) noexcept;
#endif
#if defined(TERCODE_HAVE_NEON)
void first_match_neon(std::span<const PackedBlock> blocks, MvColumns mvs,
                      std::span<std::uint32_t> out) noexcept;
#endif

}  // namespace kernels
}  // namespace tercode
