#include "tercode/kernels.hpp"

namespace tercode::kernels {

void first_match_scalar(std::span<const PackedBlock> blocks, MvColumns mvs,
                        std::span<std::uint32_t> out) noexcept {
  const std::size_t n = mvs.size();
  const std::uint64_t* care = mvs.care.data();
  const std::uint64_t* value = mvs.value.data();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::uint64_t bc = blocks[b].care;
    const std::uint64_t bv = blocks[b].value;
    std::uint32_t hit = kNoMatch;
    for (std::size_t i = 0; i < n; ++i) {
      if (((bv ^ value[i]) & bc & care[i]) == 0) {
        hit = static_cast<std::uint32_t>(i);
        break;
      }
    }
    out[b] = hit;
  }
}

}  // namespace tercode::kernels
