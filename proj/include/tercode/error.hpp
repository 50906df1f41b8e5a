#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tercode {

enum class ErrorCode {
  // test-set parsing
  EmptyInput,
  RaggedRows,
  IllegalCharacter,
  // matching / covering / coding
  LengthMismatch,
  UnsupportedBlockLength,
  UnmatchedBlock,
  AllZeroFrequencies,
  NoCodeword,
  NotMatching,
  TruncatedPayload,
  DanglingBits,
  UnknownCodeword,
  ZeroOriginal,
  // container
  BadMagic,
  UnsupportedVersion,
  CorruptHeader,
  ChecksumMismatch,
  // baseline / search / cli
  OddK,
  InvalidConfig,
  InvalidCorpusSpec,
  WidthMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// Carries a machine-checkable code alongside the message. `detail` holds a
/// numeric payload where one exists (1-based block index for UnmatchedBlock,
/// line number for parse errors), otherwise 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t detail = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::size_t detail_;
};

}  // namespace tercode
