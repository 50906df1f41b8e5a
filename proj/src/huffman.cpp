#include "tercode/huffman.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>

#include "tercode/error.hpp"

namespace tercode {

Codeword Codeword::from_string(const std::string& text) {
  if (text.size() > kMaxCodewordLength) {
    throw Error(ErrorCode::InvalidConfig, "codeword longer than 64 bits");
  }
  Codeword cw;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::IllegalCharacter, "codeword character '" + std::string(1, c) + "'");
    }
    cw.bits = (cw.bits << 1) | static_cast<std::uint64_t>(c == '1');
    ++cw.length;
  }
  return cw;
}

std::string Codeword::to_string() const {
  std::string s;
  for (unsigned i = length; i-- > 0;) s.push_back(((bits >> i) & 1u) ? '1' : '0');
  return s;
}

bool Codeword::is_prefix_of(const Codeword& other) const noexcept {
  if (length > other.length) return false;
  if (length == 0) return true;
  return (other.bits >> (other.length - length)) == bits;
}

const Codeword& Codebook::at(std::size_t index) const {
  if (!has(index)) throw Error(ErrorCode::NoCodeword, "no codeword for MV " + std::to_string(index));
  return *entries_[index];
}

void Codebook::set(std::size_t index, Codeword cw) {
  if (index >= entries_.size()) entries_.resize(index + 1);
  entries_[index] = cw;
}

std::size_t Codebook::entry_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); }));
}

bool Codebook::is_prefix_free() const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i]) continue;
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (i == j || !entries_[j]) continue;
      if (entries_[i]->is_prefix_of(*entries_[j])) return false;
    }
  }
  return true;
}

bool Codebook::kraft_ok() const noexcept {
  std::array<std::uint64_t, kMaxCodewordLength + 1> per_length{};
  for (const auto& e : entries_) {
    if (e) ++per_length[e->length];
  }
  // Walk down the code tree: `free` is the number of unused nodes at depth d.
  std::uint64_t free = 1;
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  for (unsigned d = 0; d <= kMaxCodewordLength; ++d) {
    if (per_length[d] > free) return false;
    free = std::min(cap, (free - per_length[d]) * 2);
  }
  return true;
}

double Codebook::kraft_sum() const noexcept {
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (e) sum += std::ldexp(1.0, -static_cast<int>(e->length));
  }
  return sum;
}

std::vector<std::optional<unsigned>> huffman_code_lengths(std::span<const std::uint64_t> frequencies) {
  struct Node {
    std::uint64_t weight;
    std::size_t min_index;
    int left;
    int right;
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * frequencies.size());

  // Min-heap on (weight, min_index); min_index is unique per live node, so
  // the order is total and the tree is fully deterministic.
  auto greater = [&nodes](int a, int b) {
    const Node& x = nodes[static_cast<std::size_t>(a)];
    const Node& y = nodes[static_cast<std::size_t>(b)];
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.min_index > y.min_index;
  };
  std::priority_queue<int, std::vector<int>, decltype(greater)> heap(greater);

  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] == 0) continue;
    nodes.push_back({frequencies[i], i, -1, -1});
    heap.push(static_cast<int>(nodes.size() - 1));
  }
  if (heap.empty()) throw Error(ErrorCode::AllZeroFrequencies, "no MV is used");

  while (heap.size() > 1) {
    const int a = heap.top();
    heap.pop();
    const int b = heap.top();
    heap.pop();
    const Node& na = nodes[static_cast<std::size_t>(a)];
    const Node& nb = nodes[static_cast<std::size_t>(b)];
    nodes.push_back({na.weight + nb.weight, std::min(na.min_index, nb.min_index), a, b});
    heap.push(static_cast<int>(nodes.size() - 1));
  }

  std::vector<std::optional<unsigned>> lengths(frequencies.size());
  std::vector<std::pair<int, unsigned>> stack{{heap.top(), 0u}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const Node& n = nodes[static_cast<std::size_t>(id)];
    if (n.left < 0) {
      if (depth > kMaxCodewordLength) {
        throw Error(ErrorCode::InvalidConfig, "Huffman code exceeds 64 bits");
      }
      lengths[n.min_index] = depth;
      continue;
    }
    stack.emplace_back(n.left, depth + 1);
    stack.emplace_back(n.right, depth + 1);
  }
  return lengths;
}

Codebook canonical_codebook(std::span<const std::optional<unsigned>> lengths) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i]) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *lengths[a] < *lengths[b]; });

  Codebook book(lengths.size());
  std::uint64_t code = 0;
  unsigned prev_len = 0;
  bool first = true;
  for (std::size_t idx : order) {
    const unsigned len = *lengths[idx];
    if (len > kMaxCodewordLength) throw Error(ErrorCode::InvalidConfig, "codeword longer than 64 bits");
    if (!first) {
      ++code;
      code = (len - prev_len) >= 64 ? 0 : code << (len - prev_len);
    } else {
      code = 0;
      first = false;
    }
    book.set(idx, Codeword{code, len});
    prev_len = len;
  }
  return book;
}

Codebook build_huffman(std::span<const std::uint64_t> frequencies) {
  const auto lengths = huffman_code_lengths(frequencies);
  return canonical_codebook(lengths);
}

}  // namespace tercode
