#include "tercode/core.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "tercode/error.hpp"

namespace tercode {

char to_char(Trit t) noexcept {
  switch (t) {
    case Trit::Zero: return '0';
    case Trit::One: return '1';
    case Trit::X: return 'X';
  }
  return '?';
}

std::optional<Trit> trit_from_char(char c) noexcept {
  switch (c) {
    case '0': return Trit::Zero;
    case '1': return Trit::One;
    case 'X':
    case 'x': return Trit::X;
    default: return std::nullopt;
  }
}

std::vector<Trit> trits_from_string(std::string_view text) {
  std::vector<Trit> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto t = trit_from_char(text[i]);
    if (!t) {
      throw Error(ErrorCode::IllegalCharacter,
                  "character '" + std::string(1, text[i]) + "' at offset " + std::to_string(i));
    }
    out.push_back(*t);
  }
  return out;
}

std::string trits_to_string(const std::vector<Trit>& trits) {
  std::string s;
  s.reserve(trits.size());
  for (Trit t : trits) s.push_back(to_char(t));
  return s;
}

TestSet::TestSet(std::vector<std::vector<Trit>> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.front().empty()) {
    throw Error(ErrorCode::EmptyInput, "test set needs at least one non-empty pattern");
  }
  const std::size_t n = rows_.front().size();
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].size() != n) {
      throw Error(ErrorCode::RaggedRows,
                  "pattern " + std::to_string(i + 1) + " has length " +
                      std::to_string(rows_[i].size()) + ", expected " + std::to_string(n),
                  i + 1);
    }
  }
}

TestSet parse_test_set(std::istream& in) {
  std::vector<std::vector<Trit>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<Trit> row;
    row.reserve(line.size());
    for (std::size_t col = 0; col < line.size(); ++col) {
      auto t = trit_from_char(line[col]);
      if (!t) {
        throw Error(ErrorCode::IllegalCharacter,
                    "line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                        ": '" + std::string(1, line[col]) + "'",
                    line_no);
      }
      row.push_back(*t);
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw Error(ErrorCode::RaggedRows,
                  "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                      " symbols, expected " + std::to_string(width),
                  line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no patterns found");
  return TestSet(std::move(rows));
}

TestSet parse_test_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_test_set(in);
}

void write_test_set(std::ostream& out, const TestSet& ts) {
  std::string line;
  for (const auto& row : ts.rows()) {
    line.clear();
    for (Trit t : row) line.push_back(to_char(t));
    line.push_back('\n');
    out << line;
  }
}

std::string format_test_set(const TestSet& ts) {
  std::ostringstream out;
  write_test_set(out, ts);
  return out.str();
}

TernaryString flatten(const TestSet& ts) {
  TernaryString s;
  s.symbols.reserve(ts.pattern_count() * ts.width());
  for (const auto& row : ts.rows()) s.symbols.insert(s.symbols.end(), row.begin(), row.end());
  s.original_length = s.symbols.size();
  return s;
}

std::vector<InputBlock> partition(const TernaryString& s, std::size_t block_length) {
  if (block_length == 0) throw Error(ErrorCode::InvalidConfig, "block length must be >= 1");
  const std::size_t n = s.original_length;
  const std::size_t count = (n + block_length - 1) / block_length;
  std::vector<InputBlock> blocks;
  blocks.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    InputBlock ib;
    ib.index = b + 1;
    ib.symbols.assign(block_length, Trit::X);
    const std::size_t begin = b * block_length;
    const std::size_t end = std::min(begin + block_length, n);
    for (std::size_t i = begin; i < end; ++i) ib.symbols[i - begin] = s.symbols[i];
    blocks.push_back(std::move(ib));
  }
  return blocks;
}

std::uint64_t original_size_bits(const TestSet& ts) noexcept {
  return static_cast<std::uint64_t>(ts.pattern_count()) * ts.width();
}

}  // namespace tercode
