#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tercode {

/// Test-set symbol. The matching-vector side uses MvSymbol; X and U are
/// separate types so one never stands in for the other.
enum class Trit : std::uint8_t { Zero, One, X };

char to_char(Trit t) noexcept;
/// Accepts '0', '1', 'X' and 'x'.
std::optional<Trit> trit_from_char(char c) noexcept;

/// Throws IllegalCharacter on anything outside {0,1,X,x}.
std::vector<Trit> trits_from_string(std::string_view text);
std::string trits_to_string(const std::vector<Trit>& trits);

/// T patterns of n trits each, T >= 1, n >= 1.
class TestSet {
 public:
  explicit TestSet(std::vector<std::vector<Trit>> rows);

  std::size_t pattern_count() const noexcept { return rows_.size(); }
  std::size_t width() const noexcept { return rows_.front().size(); }
  const std::vector<std::vector<Trit>>& rows() const noexcept { return rows_; }

  friend bool operator==(const TestSet&, const TestSet&) = default;

 private:
  std::vector<std::vector<Trit>> rows_;
};

struct TernaryString {
  std::vector<Trit> symbols;
  std::size_t original_length = 0;

  friend bool operator==(const TernaryString&, const TernaryString&) = default;
};

struct InputBlock {
  std::vector<Trit> symbols;
  std::size_t index = 0;  // 1-based

  std::size_t size() const noexcept { return symbols.size(); }
  friend bool operator==(const InputBlock&, const InputBlock&) = default;
};

/// One pattern per line; blank lines and lines starting with '#' are skipped.
/// Trailing '\r' is tolerated. Errors carry the offending 1-based line number.
TestSet parse_test_set(std::istream& in);
TestSet parse_test_set(std::string_view text);

/// Canonical emission: one row per line, 'X' for don't-cares.
void write_test_set(std::ostream& out, const TestSet& ts);
std::string format_test_set(const TestSet& ts);

TernaryString flatten(const TestSet& ts);

/// Splits into ceil(original_length / K) blocks of exactly K trits, padding
/// the last block with X. K must be >= 1.
std::vector<InputBlock> partition(const TernaryString& s, std::size_t block_length);

/// T * n; don't-cares count as one bit each, padding is excluded.
std::uint64_t original_size_bits(const TestSet& ts) noexcept;

}  // namespace tercode
