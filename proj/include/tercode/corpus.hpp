#pragma once

#include <cstddef>
#include <cstdint>

#include "tercode/core.hpp"

namespace tercode {

/// Synthetic clustered test set: each pattern is a run of template blocks
/// (chosen at random) with per-bit flips, then X-ed at `x_density`.
struct CorpusSpec {
  std::size_t patterns = 400;        // T
  std::size_t width = 250;           // n
  double x_density = 0.3;
  std::size_t templates = 4;
  /// 0 means templates span the whole pattern width.
  std::size_t template_width = 0;
  double flip_probability = 0.05;
  std::uint64_t seed = 1;

  /// Throws InvalidCorpusSpec.
  void validate() const;
};

TestSet generate_corpus(const CorpusSpec& spec);

}  // namespace tercode
