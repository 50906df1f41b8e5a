#include <arm_neon.h>

#include "tercode/kernels.hpp"

namespace tercode::kernels {

void first_match_neon(std::span<const PackedBlock> blocks, MvColumns mvs,
                      std::span<std::uint32_t> out) noexcept {
  const std::size_t n = mvs.size();
  const std::size_t n2 = n & ~std::size_t{1};
  const std::uint64_t* care = mvs.care.data();
  const std::uint64_t* value = mvs.value.data();

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::uint64_t bc = blocks[b].care;
    const std::uint64_t bv = blocks[b].value;
    const uint64x2_t vbc = vdupq_n_u64(bc);
    const uint64x2_t vbv = vdupq_n_u64(bv);

    std::uint32_t hit = kNoMatch;
    std::size_t i = 0;
    for (; i < n2; i += 2) {
      const uint64x2_t conflict =
          vandq_u64(vandq_u64(veorq_u64(vbv, vld1q_u64(value + i)), vbc), vld1q_u64(care + i));
      const uint64x2_t eq = vceqzq_u64(conflict);
      if (vgetq_lane_u64(eq, 0) != 0) {
        hit = static_cast<std::uint32_t>(i);
        break;
      }
      if (vgetq_lane_u64(eq, 1) != 0) {
        hit = static_cast<std::uint32_t>(i + 1);
        break;
      }
    }
    if (hit == kNoMatch && i < n && ((bv ^ value[i]) & bc & care[i]) == 0) {
      hit = static_cast<std::uint32_t>(i);
    }
    out[b] = hit;
  }
}

}  // namespace tercode::kernels
