#include <atomic>
#include <cstdlib>
#include <string_view>

#include "tercode/error.hpp"
#include "tercode/kernels.hpp"

namespace tercode {

PackedBlock pack_block(const InputBlock& ib) {
  if (ib.size() > kMaxBlockLength) {
    throw Error(ErrorCode::UnsupportedBlockLength,
                "block length " + std::to_string(ib.size()) + " exceeds " +
                    std::to_string(kMaxBlockLength));
  }
  PackedBlock p;
  for (std::size_t j = 0; j < ib.size(); ++j) {
    const Trit t = ib.symbols[j];
    if (t == Trit::X) continue;
    p.care |= std::uint64_t{1} << j;
    if (t == Trit::One) p.value |= std::uint64_t{1} << j;
  }
  return p;
}

PackedMv pack_mv(const MatchingVector& v) {
  if (v.size() > kMaxBlockLength) {
    throw Error(ErrorCode::UnsupportedBlockLength,
                "matching vector length " + std::to_string(v.size()) + " exceeds " +
                    std::to_string(kMaxBlockLength));
  }
  PackedMv p;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const MvSymbol s = v[j];
    if (s == MvSymbol::U) continue;
    p.care |= std::uint64_t{1} << j;
    if (s == MvSymbol::One) p.value |= std::uint64_t{1} << j;
  }
  return p;
}

namespace kernels {
namespace {

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("TERCODE_KERNEL")) {
    const std::string_view name(env);
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (name == "neon" && isa_supported(Isa::Neon)) return Isa::Neon;
  }
  return best_isa();
}

std::atomic<Isa>& active_slot() noexcept {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(TERCODE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(TERCODE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(ErrorCode::InvalidConfig, std::string("kernel not supported here: ") + isa_name(isa));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

void first_match(Isa isa, std::span<const PackedBlock> blocks, MvColumns mvs,
                 std::span<std::uint32_t> out) {
  if (out.size() != blocks.size() || mvs.care.size() != mvs.value.size()) {
    throw Error(ErrorCode::LengthMismatch, "first_match: mismatched buffer sizes");
  }
  switch (isa) {
#if defined(TERCODE_HAVE_AVX2)
    case Isa::Avx2:
      if (isa_supported(Isa::Avx2)) return first_match_avx2(blocks, mvs, out);
      break;
#endif
#if defined(TERCODE_HAVE_NEON)
    case Isa::Neon: return first_match_neon(blocks, mvs, out);
#endif
    default: break;
  }
  if (isa != Isa::Scalar) {
    throw Error(ErrorCode::InvalidConfig, std::string("kernel not supported here: ") + isa_name(isa));
  }
  first_match_scalar(blocks, mvs, out);
}

void first_match(std::span<const PackedBlock> blocks, MvColumns mvs,
                 std::span<std::uint32_t> out) {
  first_match(active_isa(), blocks, mvs, out);
}

}  // namespace kernels
}  // namespace tercode
