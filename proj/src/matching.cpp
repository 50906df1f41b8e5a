#include "tercode/matching.hpp"

#include "tercode/error.hpp"

namespace tercode {

char to_char(MvSymbol s) noexcept {
  switch (s) {
    case MvSymbol::Zero: return '0';
    case MvSymbol::One: return '1';
    case MvSymbol::U: return 'U';
  }
  return '?';
}

std::optional<MvSymbol> mv_symbol_from_char(char c) noexcept {
  switch (c) {
    case '0': return MvSymbol::Zero;
    case '1': return MvSymbol::One;
    case 'U':
    case 'u': return MvSymbol::U;
    default: return std::nullopt;
  }
}

MatchingVector::MatchingVector(std::vector<MvSymbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == MvSymbol::U) u_positions_.push_back(i);
  }
}

MatchingVector MatchingVector::from_string(std::string_view text) {
  std::vector<MvSymbol> syms;
  syms.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto s = mv_symbol_from_char(text[i]);
    if (!s) {
      throw Error(ErrorCode::IllegalCharacter,
                  "matching vector symbol '" + std::string(1, text[i]) + "' at offset " +
                      std::to_string(i));
    }
    syms.push_back(*s);
  }
  return MatchingVector(std::move(syms));
}

MatchingVector MatchingVector::all_unspecified(std::size_t length) {
  return MatchingVector(std::vector<MvSymbol>(length, MvSymbol::U));
}

std::string MatchingVector::to_string() const {
  std::string s;
  s.reserve(symbols_.size());
  for (MvSymbol m : symbols_) s.push_back(to_char(m));
  return s;
}

bool matches(const MatchingVector& v, const InputBlock& ib) {
  if (v.size() != ib.size()) {
    throw Error(ErrorCode::LengthMismatch, "matching vector length " + std::to_string(v.size()) +
                                               " vs block length " + std::to_string(ib.size()));
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    const MvSymbol m = v[j];
    const Trit t = ib.symbols[j];
    if ((m == MvSymbol::Zero && t == Trit::One) || (m == MvSymbol::One && t == Trit::Zero)) {
      return false;
    }
  }
  return true;
}

}  // namespace tercode
