#include "tercode/corpus.hpp"

#include <vector>

#include "tercode/ea.hpp"
#include "tercode/error.hpp"

namespace tercode {

void CorpusSpec::validate() const {
  auto fail = [](const char* m) { throw Error(ErrorCode::InvalidCorpusSpec, m); };
  if (patterns == 0) fail("pattern count must be >= 1");
  if (width == 0) fail("width must be >= 1");
  if (templates == 0) fail("template count must be >= 1");
  if (!(x_density >= 0.0 && x_density <= 1.0)) fail("X density must lie in [0, 1]");
  if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) fail("flip probability must lie in [0, 1]");
}

TestSet generate_corpus(const CorpusSpec& spec) {
  spec.validate();
  ea::Rng rng(spec.seed);
  const std::size_t tw = spec.template_width == 0 ? spec.width : spec.template_width;

  std::vector<std::vector<bool>> templates(spec.templates, std::vector<bool>(tw));
  for (auto& t : templates) {
    for (std::size_t i = 0; i < tw; ++i) t[i] = rng() & 1u;
  }

  std::vector<std::vector<Trit>> rows(spec.patterns, std::vector<Trit>(spec.width));
  for (auto& row : rows) {
    std::size_t col = 0;
    while (col < spec.width) {
      const auto& t = templates[static_cast<std::size_t>(ea::uniform_below(rng, spec.templates))];
      for (std::size_t i = 0; i < tw && col < spec.width; ++i, ++col) {
        bool bit = t[i];
        if (ea::unit_interval(rng) < spec.flip_probability) bit = !bit;
        row[col] = bit ? Trit::One : Trit::Zero;
      }
    }
    for (Trit& s : row) {
      if (ea::unit_interval(rng) < spec.x_density) s = Trit::X;
    }
  }
  return TestSet(std::move(rows));
}

}  // namespace tercode
