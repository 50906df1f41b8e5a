#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tercode/core.hpp"

namespace tercode {

/// Matching-vector symbol: U positions are transmitted as explicit fill bits.
enum class MvSymbol : std::uint8_t { Zero, One, U };

char to_char(MvSymbol s) noexcept;
/// Accepts '0', '1', 'U' and 'u'.
std::optional<MvSymbol> mv_symbol_from_char(char c) noexcept;

class MatchingVector {
 public:
  MatchingVector() = default;
  explicit MatchingVector(std::vector<MvSymbol> symbols);

  /// Parses "111UUU"; throws IllegalCharacter.
  static MatchingVector from_string(std::string_view text);
  static MatchingVector all_unspecified(std::size_t length);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<MvSymbol>& symbols() const noexcept { return symbols_; }
  MvSymbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

  /// N_U: number of U positions.
  std::size_t n_unspecified() const noexcept { return u_positions_.size(); }
  /// 0-based, strictly increasing.
  const std::vector<std::size_t>& u_positions() const noexcept { return u_positions_; }

  std::string to_string() const;

  friend bool operator==(const MatchingVector& a, const MatchingVector& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<MvSymbol> symbols_;
  std::vector<std::size_t> u_positions_;
};

/// True iff no position pairs a 1 with a 0. X and U match anything.
/// Throws LengthMismatch when the lengths differ.
bool matches(const MatchingVector& v, const InputBlock& ib);

}  // namespace tercode
