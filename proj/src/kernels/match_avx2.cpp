// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "tercode/kernels.hpp"

namespace tercode::kernels {

void first_match_avx2(std::span<const PackedBlock> blocks, MvColumns mvs,
                      std::span<std::uint32_t> out) noexcept {
  const std::size_t n = mvs.size();
  const std::size_t n4 = n & ~std::size_t{3};
  const std::uint64_t* care = mvs.care.data();
  const std::uint64_t* value = mvs.value.data();
  const __m256i zero = _mm256_setzero_si256();

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::uint64_t bc = blocks[b].care;
    const std::uint64_t bv = blocks[b].value;
    const __m256i vbc = _mm256_set1_epi64x(static_cast<long long>(bc));
    const __m256i vbv = _mm256_set1_epi64x(static_cast<long long>(bv));

    std::uint32_t hit = kNoMatch;
    std::size_t i = 0;
    for (; i < n4; i += 4) {
      const __m256i mc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(care + i));
      const __m256i mv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(value + i));
      const __m256i conflict =
          _mm256_and_si256(_mm256_and_si256(_mm256_xor_si256(vbv, mv), vbc), mc);
      const int lanes = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(conflict, zero)));
      if (lanes != 0) {
        hit = static_cast<std::uint32_t>(i + static_cast<std::size_t>(__builtin_ctz(lanes)));
        break;
      }
    }
    if (hit == kNoMatch) {
      for (; i < n; ++i) {
        if (((bv ^ value[i]) & bc & care[i]) == 0) {
          hit = static_cast<std::uint32_t>(i);
          break;
        }
      }
    }
    out[b] = hit;
  }
}

}  // namespace tercode::kernels
