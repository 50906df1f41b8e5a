#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tercode/bitstream.hpp"

namespace tercode {

inline constexpr unsigned kMaxCodewordLength = 64;

/// Up to 64 bits; the first transmitted bit is bit (length - 1) of `bits`.
struct Codeword {
  std::uint64_t bits = 0;
  unsigned length = 0;

  static Codeword from_string(const std::string& text);
  std::string to_string() const;
  /// True if this codeword is a (non-strict) prefix of `other`.
  bool is_prefix_of(const Codeword& other) const noexcept;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// MV index -> codeword. Indices without a codeword (zero frequency) are
/// empty slots.
class Codebook {
 public:
  Codebook() = default;
  explicit Codebook(std::size_t size) : entries_(size) {}
  explicit Codebook(std::vector<std::optional<Codeword>> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool has(std::size_t index) const noexcept {
    return index < entries_.size() && entries_[index].has_value();
  }
  /// Throws NoCodeword.
  const Codeword& at(std::size_t index) const;
  void set(std::size_t index, Codeword cw);
  std::size_t entry_count() const noexcept;
  const std::vector<std::optional<Codeword>>& entries() const noexcept { return entries_; }

  bool is_prefix_free() const noexcept;
  /// Exact check that the sum of 2^-length over all entries is <= 1.
  bool kraft_ok() const noexcept;
  double kraft_sum() const noexcept;

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  std::vector<std::optional<Codeword>> entries_;
};

/// Huffman code over the nonzero frequencies, canonicalised by
/// (length, index). Merge ties break on (weight, smallest contained index).
/// A single nonzero frequency receives the empty codeword.
/// Throws AllZeroFrequencies.
Codebook build_huffman(std::span<const std::uint64_t> frequencies);

/// Code lengths only; nullopt for zero-frequency entries.
std::vector<std::optional<unsigned>> huffman_code_lengths(std::span<const std::uint64_t> frequencies);

/// Canonical codewords for the given lengths, assigned in (length, index) order.
Codebook canonical_codebook(std::span<const std::optional<unsigned>> lengths);

}  // namespace tercode
