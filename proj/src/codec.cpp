#include "tercode/codec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "tercode/error.hpp"

namespace tercode {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void check_lengths(std::span<const InputBlock> blocks, std::span<const MatchingVector> mvs) {
  std::optional<std::size_t> k;
  auto check = [&k](std::size_t len, const char* what, std::size_t idx) {
    if (!k) {
      k = len;
    } else if (*k != len) {
      throw Error(ErrorCode::LengthMismatch, std::string(what) + " " + std::to_string(idx + 1) +
                                                 " has length " + std::to_string(len) +
                                                 ", expected " + std::to_string(*k));
    }
  };
  for (std::size_t i = 0; i < mvs.size(); ++i) check(mvs[i].size(), "matching vector", i);
  for (std::size_t i = 0; i < blocks.size(); ++i) check(blocks[i].size(), "block", i);
}

/// Packed MVs in scan order plus the scan-position -> MV-index map.
struct ScanTable {
  kernels::MvTable table;
  std::vector<std::size_t> order;
};

ScanTable make_scan_table(std::span<const MatchingVector> mvs) {
  ScanTable st;
  st.order = cover_order(mvs);
  st.table.care.reserve(mvs.size());
  st.table.value.reserve(mvs.size());
  for (std::size_t idx : st.order) st.table.push_back(pack_mv(mvs[idx]));
  return st;
}

struct PackedHash {
  std::size_t operator()(const PackedBlock& b) const noexcept {
    return static_cast<std::size_t>(splitmix64(b.care ^ splitmix64(b.value)));
  }
};

/// Shared subsumption loop. `assignment[b]` is the MV of packed block b;
/// multiplicities are already folded into `freqs`.
std::uint64_t subsume_core(std::span<const PackedBlock> blocks, std::span<std::uint32_t> assignment,
                           std::vector<std::uint64_t>& freqs, std::span<const MatchingVector> mvs,
                           std::size_t& merges) {
  const std::size_t n_mvs = mvs.size();
  std::vector<PackedMv> packed(n_mvs);
  for (std::size_t i = 0; i < n_mvs; ++i) packed[i] = pack_mv(mvs[i]);

  std::vector<std::vector<std::uint32_t>> members(n_mvs);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (assignment[b] != kernels::kNoMatch) {
      members[assignment[b]].push_back(static_cast<std::uint32_t>(b));
    }
  }

  std::uint64_t current = huffman_payload_bits(freqs, mvs);
  std::vector<std::uint64_t> trial;
  for (;;) {
    bool improved = false;
    for (std::size_t j = 0; j < n_mvs && !improved; ++j) {
      if (freqs[j] == 0) continue;
      for (std::size_t i = 0; i < n_mvs; ++i) {
        if (i == j || freqs[i] == 0) continue;
        const bool covers_all =
            std::all_of(members[j].begin(), members[j].end(),
                        [&](std::uint32_t b) { return packed_matches(packed[i], blocks[b]); });
        if (!covers_all) continue;
        trial = freqs;
        trial[i] += trial[j];
        trial[j] = 0;
        const std::uint64_t cost = huffman_payload_bits(trial, mvs);
        if (cost >= current) continue;

        for (std::uint32_t b : members[j]) assignment[b] = static_cast<std::uint32_t>(i);
        members[i].insert(members[i].end(), members[j].begin(), members[j].end());
        members[j].clear();
        freqs.swap(trial);
        current = cost;
        ++merges;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return current;
}

}  // namespace

std::vector<std::size_t> cover_order(std::span<const MatchingVector> mvs) {
  std::vector<std::size_t> order(mvs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mvs[a].n_unspecified() < mvs[b].n_unspecified();
  });
  return order;
}

Covering cover(std::span<const InputBlock> blocks, std::span<const MatchingVector> mvs) {
  check_lengths(blocks, mvs);
  Covering c;
  c.frequencies.assign(mvs.size(), 0);
  c.assignment.resize(blocks.size());
  if (blocks.empty()) return c;

  std::vector<PackedBlock> packed(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) packed[b] = pack_block(blocks[b]);
  const ScanTable st = make_scan_table(mvs);
  std::vector<std::uint32_t> hits(blocks.size());
  kernels::first_match(packed, st.table.columns(), hits);

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (hits[b] == kernels::kNoMatch) {
      throw Error(ErrorCode::UnmatchedBlock,
                  "no matching vector matches block " + std::to_string(b + 1) + " (" +
                      trits_to_string(blocks[b].symbols) + ")",
                  b + 1);
    }
    const std::size_t mv = st.order[hits[b]];
    c.assignment[b] = mv;
    ++c.frequencies[mv];
  }
  return c;
}

BlockSet BlockSet::build(std::span<const InputBlock> blocks) {
  BlockSet bs;
  if (blocks.empty()) return bs;
  bs.block_length = blocks.front().size();
  std::unordered_map<PackedBlock, std::size_t, PackedHash> seen;
  seen.reserve(blocks.size());
  for (const InputBlock& ib : blocks) {
    if (ib.size() != bs.block_length) {
      throw Error(ErrorCode::LengthMismatch, "block " + std::to_string(ib.index) + " has length " +
                                                 std::to_string(ib.size()));
    }
    const PackedBlock p = pack_block(ib);
    auto [it, inserted] = seen.try_emplace(p, bs.unique.size());
    if (inserted) {
      bs.unique.push_back(p);
      bs.counts.push_back(0);
    }
    ++bs.counts[it->second];
  }
  bs.total = blocks.size();
  return bs;
}

CoverTally cover_tally(const BlockSet& blocks, std::span<const MatchingVector> mvs) {
  for (const auto& v : mvs) {
    if (v.size() != blocks.block_length) {
      throw Error(ErrorCode::LengthMismatch, "matching vector length " + std::to_string(v.size()) +
                                                 " vs block length " +
                                                 std::to_string(blocks.block_length));
    }
  }
  CoverTally t;
  t.frequencies.assign(mvs.size(), 0);
  t.assignment.resize(blocks.unique.size());
  const ScanTable st = make_scan_table(mvs);
  kernels::first_match(blocks.unique, st.table.columns(), t.assignment);
  for (std::size_t u = 0; u < t.assignment.size(); ++u) {
    if (t.assignment[u] == kernels::kNoMatch) {
      t.unmatched_blocks += blocks.counts[u];
      continue;
    }
    const auto mv = static_cast<std::uint32_t>(st.order[t.assignment[u]]);
    t.assignment[u] = mv;
    t.frequencies[mv] += blocks.counts[u];
  }
  return t;
}

std::uint64_t encoding_length(const MatchingVector& v, const Codebook& book, std::size_t index) {
  return book.at(index).length + v.n_unspecified();
}

std::uint64_t payload_bits(std::span<const std::uint64_t> frequencies, const Codebook& book,
                           std::span<const MatchingVector> mvs) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] == 0) continue;
    total += frequencies[i] * encoding_length(mvs[i], book, i);
  }
  return total;
}

std::uint64_t huffman_payload_bits(std::span<const std::uint64_t> frequencies,
                                   std::span<const MatchingVector> mvs) {
  const auto lengths = huffman_code_lengths(frequencies);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (frequencies[i] == 0) continue;
    total += frequencies[i] * (*lengths[i] + mvs[i].n_unspecified());
  }
  return total;
}

bool FillPolicy::fill_bit(std::size_t block_index, std::size_t position) const noexcept {
  switch (mode) {
    case FillMode::Zero: return false;
    case FillMode::One: return true;
    case FillMode::Random:
      return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(block_index) << 16) ^ position)) & 1u;
  }
  return false;
}

BitBuffer encode_block(const InputBlock& ib, const MatchingVector& v, const Codeword& cw,
                       FillPolicy fill) {
  if (!matches(v, ib)) {
    throw Error(ErrorCode::NotMatching, "block " + std::to_string(ib.index) + " (" +
                                            trits_to_string(ib.symbols) + ") vs " + v.to_string());
  }
  BitBuffer out;
  out.append(cw.bits, cw.length);
  for (std::size_t pos : v.u_positions()) {
    switch (ib.symbols[pos]) {
      case Trit::Zero: out.push_back(false); break;
      case Trit::One: out.push_back(true); break;
      case Trit::X: out.push_back(fill.fill_bit(ib.index, pos)); break;
    }
  }
  return out;
}

BitBuffer encode_block(const InputBlock& ib, const MatchingVector& v, const Codebook& book,
                       std::size_t index, FillPolicy fill) {
  return encode_block(ib, v, book.at(index), fill);
}

EncodedStream encode_all(std::span<const InputBlock> blocks, const Covering& covering,
                         const Codebook& book, std::span<const MatchingVector> mvs,
                         std::uint64_t original_length, FillPolicy fill) {
  check_lengths(blocks, mvs);
  if (covering.assignment.size() != blocks.size()) {
    throw Error(ErrorCode::LengthMismatch, "covering does not cover every block");
  }

  EncodedStream s;
  s.block_length = !blocks.empty() ? blocks.front().size() : (!mvs.empty() ? mvs.front().size() : 0);
  s.block_count = blocks.size();
  s.original_length = original_length;

  std::vector<std::size_t> remap(mvs.size(), SIZE_MAX);
  for (std::size_t i = 0; i < mvs.size(); ++i) {
    if (!book.has(i)) continue;
    remap[i] = s.mvs.size();
    s.mvs.push_back(mvs[i]);
    s.codebook.set(remap[i], book.at(i));
  }

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t mv = covering.assignment[b];
    if (mv >= mvs.size()) throw Error(ErrorCode::LengthMismatch, "assignment out of range");
    s.payload.append(encode_block(blocks[b], mvs[mv], book, mv, fill));
  }
  return s;
}

std::string decode(const EncodedStream& stream) {
  const std::size_t k = stream.block_length;
  if (k == 0 || stream.block_count != (stream.original_length + k - 1) / k) {
    throw Error(ErrorCode::CorruptHeader, "block count inconsistent with original length");
  }
  if (stream.codebook.size() != stream.mvs.size() ||
      stream.codebook.entry_count() != stream.mvs.size()) {
    throw Error(ErrorCode::CorruptHeader, "every table entry needs a codeword");
  }
  for (const auto& v : stream.mvs) {
    if (v.size() != k) throw Error(ErrorCode::CorruptHeader, "matching vector length differs from K");
  }

  std::map<std::pair<unsigned, std::uint64_t>, std::size_t> lookup;
  unsigned max_len = 0;
  for (std::size_t i = 0; i < stream.mvs.size(); ++i) {
    const Codeword& cw = stream.codebook.at(i);
    lookup.emplace(std::pair{cw.length, cw.bits}, i);
    max_len = std::max(max_len, cw.length);
  }

  std::string out;
  out.reserve(stream.block_count * k);
  BitReader in(stream.payload);
  for (std::uint64_t b = 0; b < stream.block_count; ++b) {
    std::uint64_t code = 0;
    unsigned len = 0;
    std::size_t mv = SIZE_MAX;
    for (;;) {
      if (auto it = lookup.find({len, code}); it != lookup.end()) {
        mv = it->second;
        break;
      }
      if (len >= max_len) {
        throw Error(ErrorCode::UnknownCodeword, "block " + std::to_string(b + 1) + ": bits " +
                                                    Codeword{code, len}.to_string());
      }
      if (in.at_end()) {
        throw Error(ErrorCode::TruncatedPayload, "payload ends inside codeword of block " +
                                                     std::to_string(b + 1));
      }
      code = (code << 1) | static_cast<std::uint64_t>(in.read_bit());
      ++len;
    }
    const MatchingVector& v = stream.mvs[mv];
    for (std::size_t j = 0; j < k; ++j) {
      switch (v[j]) {
        case MvSymbol::Zero: out.push_back('0'); break;
        case MvSymbol::One: out.push_back('1'); break;
        case MvSymbol::U:
          if (in.at_end()) {
            throw Error(ErrorCode::TruncatedPayload, "payload ends inside fill bits of block " +
                                                         std::to_string(b + 1));
          }
          out.push_back(in.read_bit() ? '1' : '0');
          break;
      }
    }
  }
  if (!in.at_end()) {
    throw Error(ErrorCode::DanglingBits,
                std::to_string(in.remaining()) + " bits left after " +
                    std::to_string(stream.block_count) + " blocks");
  }
  out.resize(stream.original_length);
  return out;
}

double compression_rate(std::uint64_t original_bits, std::uint64_t payload) {
  if (original_bits == 0) throw Error(ErrorCode::ZeroOriginal, "original size is zero");
  return 100.0 * (static_cast<double>(original_bits) - static_cast<double>(payload)) /
         static_cast<double>(original_bits);
}

SubsumeResult subsume_merge(std::span<const InputBlock> blocks, const Covering& covering,
                            std::span<const MatchingVector> mvs) {
  check_lengths(blocks, mvs);
  SubsumeResult r;
  r.covering = covering;
  r.active.assign(mvs.size(), false);
  if (blocks.empty()) return r;

  std::vector<PackedBlock> packed(blocks.size());
  std::vector<std::uint32_t> assignment(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    packed[b] = pack_block(blocks[b]);
    assignment[b] = static_cast<std::uint32_t>(covering.assignment[b]);
  }
  r.payload_bits = subsume_core(packed, assignment, r.covering.frequencies, mvs, r.merges);
  for (std::size_t b = 0; b < blocks.size(); ++b) r.covering.assignment[b] = assignment[b];
  for (std::size_t i = 0; i < mvs.size(); ++i) r.active[i] = r.covering.frequencies[i] > 0;
  return r;
}

std::uint64_t subsume_merge(const BlockSet& blocks, CoverTally& tally,
                            std::span<const MatchingVector> mvs) {
  std::size_t merges = 0;
  return subsume_core(blocks.unique, tally.assignment, tally.frequencies, mvs, merges);
}

}  // namespace tercode
