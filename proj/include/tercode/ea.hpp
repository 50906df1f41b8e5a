#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tercode/codec.hpp"
#include "tercode/matching.hpp"

namespace tercode::ea {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Rejection sampling on raw engine output, so the
/// sequence is identical across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);
/// Uniform double in [0, 1) with 53 random bits.
double unit_interval(Rng& rng);

enum class CrossoverKind : std::uint8_t { OnePoint, Uniform };

struct EaConfig {
  std::size_t block_length = 12;      // K
  std::size_t mv_count = 64;          // L
  std::size_t population_size = 10;   // S
  std::size_t children = 5;           // C
  double p_crossover = 0.3;
  double p_mutation = 0.3;
  double p_inversion = 0.1;
  std::size_t stagnation_limit = 500;
  /// 0 selects the default of 100 * S * C.
  std::uint64_t max_evaluations = 0;
  std::uint64_t rng_seed = 1;
  bool reserve_all_u = true;
  std::size_t runs = 5;
  bool subsume = false;
  CrossoverKind crossover = CrossoverKind::OnePoint;
  /// Put the nine 9C vectors into the first individual (K even, L >= 9).
  bool seed_with_9c = false;
  /// Worker threads for child evaluation; results do not depend on it.
  std::size_t threads = 1;

  std::uint64_t evaluation_limit() const noexcept {
    return max_evaluations != 0 ? max_evaluations
                                : 100 * static_cast<std::uint64_t>(population_size) * children;
  }
  std::size_t genome_length() const noexcept { return block_length * mv_count; }
  /// Throws InvalidConfig.
  void validate() const;
};

/// Applies one `key=value` setting. Keys match the long CLI flag names, with
/// '-' or '_' as separators (K, L, population, children, p-crossover, ...).
/// Throws InvalidConfig for unknown keys or unparsable values.
void apply_setting(EaConfig& cfg, const std::string& key, const std::string& value);
/// Reads `key=value` lines; blank lines and '#' comments are ignored.
EaConfig load_config(std::istream& in, EaConfig base = {});
EaConfig load_config_file(const std::string& path, EaConfig base = {});

struct Individual {
  std::vector<MvSymbol> genes;
  double fitness = 0.0;
  bool feasible = false;

  /// The L matching vectors, MV i taking genes [i*K, (i+1)*K).
  std::vector<MatchingVector> matching_vectors(std::size_t block_length) const;
  std::string to_string() const;
};

/// Forces the last MV to all-U when the configuration reserves it.
void impose_reservation(Individual& ind, const EaConfig& cfg);

Individual random_individual(const EaConfig& cfg, Rng& rng);

struct FitnessDetail {
  double fitness = 0.0;
  bool feasible = false;
  std::uint64_t payload_bits = 0;
  std::uint64_t unmatched_blocks = 0;
};

/// Fitness is the compression rate of cover + Huffman with the individual's
/// MVs. Infeasible individuals score -1000 - (unmatched block count); the
/// -1000 base moves lower if the configuration allows feasible rates at or
/// below it, so infeasible always ranks below feasible.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const BlockSet& blocks, std::uint64_t original_bits, const EaConfig& cfg);

  FitnessDetail evaluate(std::span<const MvSymbol> genes) const;
  double penalty_base() const noexcept { return penalty_base_; }

 private:
  const BlockSet* blocks_;
  std::uint64_t original_bits_;
  std::size_t block_length_;
  std::size_t mv_count_;
  bool subsume_;
  double penalty_base_;
};

double evaluate_fitness(const Individual& ind, const BlockSet& blocks, std::uint64_t original_bits,
                        const EaConfig& cfg);

/// One-point crossover at `cut` in [1, KL-1]: a[0,cut) + b[cut,..) and
/// b[0,cut) + a[cut,..). Reservation re-imposed.
std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b,
                                               std::size_t cut, const EaConfig& cfg);
/// Draws the cut (or, for uniform crossover, a per-gene coin) from `rng`.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            const EaConfig& cfg, Rng& rng);

/// Sets one unreserved gene to a uniformly drawn symbol (possibly the same).
Individual mutate(const Individual& a, const EaConfig& cfg, Rng& rng);

/// Reverses genes [first, last] (0-based, inclusive). Reservation re-imposed.
Individual invert_range(const Individual& a, std::size_t first, std::size_t last,
                        const EaConfig& cfg);
Individual invert(const Individual& a, const EaConfig& cfg, Rng& rng);

enum class Termination : std::uint8_t { Stagnation, EvaluationLimit };
const char* to_string(Termination t) noexcept;

struct EvolutionReport {
  Individual best;
  /// Best population fitness after initialisation (entry 0) and after each
  /// generation.
  std::vector<double> best_per_generation;
  std::uint64_t evaluations = 0;
  std::uint64_t infeasible_evaluations = 0;
  std::size_t generations = 0;
  Termination reason = Termination::Stagnation;

  double initial_best() const { return best_per_generation.front(); }
};

/// (S + C) elitist evolution. Blocks must be nonempty; throws InvalidConfig.
EvolutionReport evolve(const BlockSet& blocks, std::uint64_t original_bits, const EaConfig& cfg);

struct MultiRunReport {
  std::vector<EvolutionReport> runs;
  std::vector<double> rates;
  double mean_rate = 0.0;
  double best_rate = 0.0;
  std::size_t best_run = 0;

  const EvolutionReport& best() const { return runs[best_run]; }
};

/// Seed of run `run` derived from the base seed.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t run) noexcept;

/// cfg.runs independent evolve() calls with derived seeds.
MultiRunReport run_many(const BlockSet& blocks, std::uint64_t original_bits, const EaConfig& cfg);

}  // namespace tercode::ea
