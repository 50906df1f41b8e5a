#include "tercode/baseline9c.hpp"

#include <algorithm>
#include <array>

#include "tercode/error.hpp"

namespace tercode::ninec {
namespace {

enum class Half : std::uint8_t { Zeros, Ones, Free };

constexpr std::array<std::array<Half, 2>, 9> kLayout{{
    {Half::Zeros, Half::Zeros},
    {Half::Ones, Half::Ones},
    {Half::Zeros, Half::Ones},
    {Half::Ones, Half::Zeros},
    {Half::Ones, Half::Free},
    {Half::Free, Half::Ones},
    {Half::Zeros, Half::Free},
    {Half::Free, Half::Zeros},
    {Half::Free, Half::Free},
}};

constexpr std::array<const char*, 9> kFixedCodewords{
    "0", "10", "11000", "11001", "11010", "11011", "11100", "11101", "11111",
};

MvSymbol symbol_for(Half h) {
  switch (h) {
    case Half::Zeros: return MvSymbol::Zero;
    case Half::Ones: return MvSymbol::One;
    case Half::Free: return MvSymbol::U;
  }
  return MvSymbol::U;
}

}  // namespace

std::vector<MatchingVector> nine_mvs(std::size_t block_length) {
  if (block_length == 0 || block_length % 2 != 0) {
    throw Error(ErrorCode::OddK, "9C needs an even block length, got " + std::to_string(block_length));
  }
  const std::size_t half = block_length / 2;
  std::vector<MatchingVector> out;
  out.reserve(kLayout.size());
  for (const auto& [left, right] : kLayout) {
    std::vector<MvSymbol> syms(half, symbol_for(left));
    syms.insert(syms.end(), half, symbol_for(right));
    out.emplace_back(std::move(syms));
  }
  return out;
}

Codebook nine_codebook() {
  Codebook book(kFixedCodewords.size());
  for (std::size_t i = 0; i < kFixedCodewords.size(); ++i) {
    book.set(i, Codeword::from_string(kFixedCodewords[i]));
  }
  return book;
}

NineCodeScheme nine_code_scheme(std::size_t block_length) {
  return {block_length, nine_mvs(block_length), nine_codebook()};
}

NineCodeResult compress_9c(std::span<const InputBlock> blocks, std::size_t block_length,
                           bool recode_with_huffman, std::uint64_t original_length,
                           FillPolicy fill) {
  NineCodeResult r;
  r.mvs = nine_mvs(block_length);
  r.covering = cover(blocks, r.mvs);
  const bool any_used = std::any_of(r.covering.frequencies.begin(), r.covering.frequencies.end(),
                                    [](std::uint64_t f) { return f > 0; });
  if (recode_with_huffman) {
    r.codebook = any_used ? build_huffman(r.covering.frequencies) : Codebook(r.mvs.size());
  } else {
    r.codebook = nine_codebook();
  }
  r.stream = encode_all(blocks, r.covering, r.codebook, r.mvs, original_length, fill);
  r.stream.block_length = block_length;
  return r;
}

}  // namespace tercode::ninec
