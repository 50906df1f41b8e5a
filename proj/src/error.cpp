#include "tercode/error.hpp"

namespace tercode {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::IllegalCharacter: return "IllegalCharacter";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsupportedBlockLength: return "UnsupportedBlockLength";
    case ErrorCode::UnmatchedBlock: return "UnmatchedBlock";
    case ErrorCode::AllZeroFrequencies: return "AllZeroFrequencies";
    case ErrorCode::NoCodeword: return "NoCodeword";
    case ErrorCode::NotMatching: return "NotMatching";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::DanglingBits: return "DanglingBits";
    case ErrorCode::UnknownCodeword: return "UnknownCodeword";
    case ErrorCode::ZeroOriginal: return "ZeroOriginal";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::OddK: return "OddK";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidCorpusSpec: return "InvalidCorpusSpec";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(detail) {}

}  // namespace tercode
