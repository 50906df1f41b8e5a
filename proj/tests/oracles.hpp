#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check: matching is done on characters, prefix codes are
// enumerated as explicit binary trees.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

/// Character-level match of an MV string over {0,1,U} against a block over {0,1,X}.
inline bool char_match(const std::string& mv, const std::string& block) {
  if (mv.size() != block.size()) return false;
  for (std::size_t j = 0; j < mv.size(); ++j) {
    if ((mv[j] == '0' && block[j] == '1') || (mv[j] == '1' && block[j] == '0')) return false;
  }
  return true;
}

inline std::size_t count_u(const std::string& mv) {
  return static_cast<std::size_t>(std::count(mv.begin(), mv.end(), 'U'));
}

/// Index of the matching MV with the fewest U's, lowest index on ties; -1 if none.
inline long naive_cover_one(const std::vector<std::string>& mvs, const std::string& block) {
  long best = -1;
  for (std::size_t i = 0; i < mvs.size(); ++i) {
    if (!char_match(mvs[i], block)) continue;
    if (best < 0 || count_u(mvs[i]) < count_u(mvs[static_cast<std::size_t>(best)])) {
      best = static_cast<long>(i);
    }
  }
  return best;
}

/// Leaf-depth multisets of every full binary tree with exactly `leaves` leaves.
inline std::vector<std::vector<unsigned>> tree_depth_profiles(unsigned leaves) {
  if (leaves == 1) return {{0u}};
  std::vector<std::vector<unsigned>> out;
  for (unsigned left = 1; left < leaves; ++left) {
    for (const auto& l : tree_depth_profiles(left)) {
      for (const auto& r : tree_depth_profiles(leaves - left)) {
        std::vector<unsigned> d;
        for (unsigned x : l) d.push_back(x + 1);
        for (unsigned x : r) d.push_back(x + 1);
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

/// Minimum of sum F_i * |C_i| over all prefix codes for the nonzero entries,
/// by enumerating every full binary tree and every leaf assignment.
inline std::uint64_t brute_force_min_code_cost(const std::vector<std::uint64_t>& freqs) {
  std::vector<std::uint64_t> nz;
  for (auto f : freqs) {
    if (f > 0) nz.push_back(f);
  }
  if (nz.empty()) return 0;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& depths : tree_depth_profiles(static_cast<unsigned>(nz.size()))) {
    std::vector<std::size_t> perm(nz.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      std::uint64_t cost = 0;
      for (std::size_t i = 0; i < nz.size(); ++i) cost += nz[i] * depths[perm[i]];
      best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

/// Random ternary grid as text rows.
inline std::vector<std::string> random_rows(std::mt19937_64& rng, std::size_t t, std::size_t n,
                                            double x_density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> rows(t, std::string(n, '0'));
  for (auto& row : rows) {
    for (char& c : row) c = u(rng) < x_density ? 'X' : (rng() & 1u ? '1' : '0');
  }
  return rows;
}

}  // namespace oracle
