#include "tercode/ea.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "tercode/baseline9c.hpp"
#include "tercode/error.hpp"

namespace tercode::ea {
namespace {

constexpr double kPenaltyBase = -1000.0;

MvSymbol random_symbol(Rng& rng) { return static_cast<MvSymbol>(uniform_below(rng, 3)); }

std::size_t reserved_begin(const EaConfig& cfg) noexcept {
  return cfg.reserve_all_u ? (cfg.mv_count - 1) * cfg.block_length : cfg.genome_length();
}

std::string genome_key(std::span<const MvSymbol> genes) {
  return {reinterpret_cast<const char*>(genes.data()), genes.size()};
}

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::InvalidConfig, "bad value for " + key + ": '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "bad value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw Error(ErrorCode::InvalidConfig, "bad boolean for " + key + ": '" + value + "'");
}

/// Evaluates the genomes not already cached, possibly on several threads, and
/// returns results in input order.
std::vector<FitnessDetail> evaluate_batch(const FitnessEvaluator& eval,
                                          const std::vector<const Individual*>& batch,
                                          std::unordered_map<std::string, FitnessDetail>& cache,
                                          std::size_t threads) {
  std::vector<FitnessDetail> out(batch.size());
  std::vector<std::string> keys(batch.size());
  std::vector<std::size_t> pending;
  std::unordered_map<std::string, std::size_t> first_pending;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    keys[i] = genome_key(batch[i]->genes);
    if (cache.count(keys[i]) == 0 && first_pending.try_emplace(keys[i], i).second) {
      pending.push_back(i);
    }
  }

  std::vector<FitnessDetail> computed(pending.size());
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), pending.size());
  if (workers <= 1) {
    for (std::size_t p = 0; p < pending.size(); ++p) computed[p] = eval.evaluate(batch[pending[p]]->genes);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t p = next++; p < pending.size(); p = next++) {
          computed[p] = eval.evaluate(batch[pending[p]]->genes);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t p = 0; p < pending.size(); ++p) cache.emplace(keys[pending[p]], computed[p]);
  for (std::size_t i = 0; i < batch.size(); ++i) out[i] = cache.at(keys[i]);
  return out;
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  // Reject the top partial range so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % n;
  }
}

double unit_interval(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void EaConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidConfig, m); };
  if (block_length == 0 || block_length > kMaxBlockLength) {
    fail("K must be in [1, " + std::to_string(kMaxBlockLength) + "]");
  }
  if (mv_count == 0 || mv_count > 0xffff) fail("L must be in [1, 65535]");
  if (population_size == 0) fail("population size must be >= 1");
  if (children == 0) fail("children per generation must be >= 1");
  for (double p : {p_crossover, p_mutation, p_inversion}) {
    if (!(p >= 0.0 && p <= 1.0)) fail("operator probabilities must lie in [0, 1]");
  }
  if (p_crossover + p_mutation + p_inversion > 1.0 + 1e-12) {
    fail("operator probabilities must sum to at most 1");
  }
  if (stagnation_limit == 0) fail("stagnation limit must be >= 1");
  if (runs == 0) fail("runs must be >= 1");
}

void apply_setting(EaConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalise_key(trim(raw_key));
  const std::string value = trim(raw_value);
  if (key == "K" || key == "block-length") {
    cfg.block_length = parse_number<std::size_t>(key, value);
  } else if (key == "L" || key == "mv-count") {
    cfg.mv_count = parse_number<std::size_t>(key, value);
  } else if (key == "population" || key == "population-size") {
    cfg.population_size = parse_number<std::size_t>(key, value);
  } else if (key == "children") {
    cfg.children = parse_number<std::size_t>(key, value);
  } else if (key == "p-crossover") {
    cfg.p_crossover = parse_double(key, value);
  } else if (key == "p-mutation") {
    cfg.p_mutation = parse_double(key, value);
  } else if (key == "p-inversion") {
    cfg.p_inversion = parse_double(key, value);
  } else if (key == "stagnation") {
    cfg.stagnation_limit = parse_number<std::size_t>(key, value);
  } else if (key == "max-evals") {
    cfg.max_evaluations = parse_number<std::uint64_t>(key, value);
  } else if (key == "seed") {
    cfg.rng_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "reserve-all-u") {
    cfg.reserve_all_u = parse_bool(key, value);
  } else if (key == "runs") {
    cfg.runs = parse_number<std::size_t>(key, value);
  } else if (key == "subsume") {
    cfg.subsume = parse_bool(key, value);
  } else if (key == "crossover") {
    if (value == "one-point") {
      cfg.crossover = CrossoverKind::OnePoint;
    } else if (value == "uniform") {
      cfg.crossover = CrossoverKind::Uniform;
    } else {
      throw Error(ErrorCode::InvalidConfig, "crossover must be one-point or uniform");
    }
  } else if (key == "seed-9c") {
    cfg.seed_with_9c = parse_bool(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<std::size_t>(key, value);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown setting '" + raw_key + "'");
  }
}

EaConfig load_config(std::istream& in, EaConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key=value",
                  line_no);
    }
    apply_setting(base, t.substr(0, eq), t.substr(eq + 1));
  }
  return base;
}

EaConfig load_config_file(const std::string& path, EaConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file " + path);
  return load_config(in, std::move(base));
}

std::vector<MatchingVector> Individual::matching_vectors(std::size_t block_length) const {
  std::vector<MatchingVector> mvs;
  mvs.reserve(genes.size() / block_length);
  for (std::size_t off = 0; off + block_length <= genes.size(); off += block_length) {
    mvs.emplace_back(std::vector<MvSymbol>(genes.begin() + static_cast<std::ptrdiff_t>(off),
                                           genes.begin() + static_cast<std::ptrdiff_t>(off + block_length)));
  }
  return mvs;
}

std::string Individual::to_string() const {
  std::string s;
  s.reserve(genes.size());
  for (MvSymbol g : genes) s.push_back(tercode::to_char(g));
  return s;
}

void impose_reservation(Individual& ind, const EaConfig& cfg) {
  if (!cfg.reserve_all_u) return;
  std::fill(ind.genes.begin() + static_cast<std::ptrdiff_t>(reserved_begin(cfg)), ind.genes.end(),
            MvSymbol::U);
}

Individual random_individual(const EaConfig& cfg, Rng& rng) {
  Individual ind;
  ind.genes.resize(cfg.genome_length(), MvSymbol::U);
  const std::size_t free_end = reserved_begin(cfg);
  for (std::size_t i = 0; i < free_end; ++i) ind.genes[i] = random_symbol(rng);
  return ind;
}

FitnessEvaluator::FitnessEvaluator(const BlockSet& blocks, std::uint64_t original_bits,
                                   const EaConfig& cfg)
    : blocks_(&blocks),
      original_bits_(original_bits),
      block_length_(cfg.block_length),
      mv_count_(cfg.mv_count),
      subsume_(cfg.subsume),
      penalty_base_(kPenaltyBase) {
  if (blocks.total == 0) throw Error(ErrorCode::InvalidConfig, "no input blocks");
  if (original_bits == 0) throw Error(ErrorCode::ZeroOriginal, "original size is zero");
  if (blocks.block_length != cfg.block_length) {
    throw Error(ErrorCode::LengthMismatch, "block length differs from configured K");
  }
  // A Huffman code over at most L symbols is at most L-1 bits deep.
  const double worst_payload =
      static_cast<double>(blocks.total) * static_cast<double>((mv_count_ - 1) + block_length_);
  const double worst_rate = compression_rate(original_bits, 0) -
                            100.0 * worst_payload / static_cast<double>(original_bits);
  if (worst_rate <= kPenaltyBase) penalty_base_ = std::floor(worst_rate) - 1.0;
}

FitnessDetail FitnessEvaluator::evaluate(std::span<const MvSymbol> genes) const {
  if (genes.size() != block_length_ * mv_count_) {
    throw Error(ErrorCode::LengthMismatch, "genome length differs from K * L");
  }
  std::vector<MatchingVector> mvs;
  mvs.reserve(mv_count_);
  for (std::size_t off = 0; off < genes.size(); off += block_length_) {
    mvs.emplace_back(std::vector<MvSymbol>(genes.begin() + static_cast<std::ptrdiff_t>(off),
                                           genes.begin() + static_cast<std::ptrdiff_t>(off + block_length_)));
  }
  CoverTally tally = cover_tally(*blocks_, mvs);
  FitnessDetail d;
  if (!tally.feasible()) {
    d.unmatched_blocks = tally.unmatched_blocks;
    d.fitness = penalty_base_ - static_cast<double>(tally.unmatched_blocks);
    return d;
  }
  d.feasible = true;
  d.payload_bits = subsume_ ? subsume_merge(*blocks_, tally, mvs)
                            : huffman_payload_bits(tally.frequencies, mvs);
  d.fitness = compression_rate(original_bits_, d.payload_bits);
  return d;
}

double evaluate_fitness(const Individual& ind, const BlockSet& blocks, std::uint64_t original_bits,
                        const EaConfig& cfg) {
  return FitnessEvaluator(blocks, original_bits, cfg).evaluate(ind.genes).fitness;
}

std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b,
                                               std::size_t cut, const EaConfig& cfg) {
  Individual c1 = a;
  Individual c2 = b;
  const std::size_t n = std::min({cut, a.genes.size(), b.genes.size()});
  for (std::size_t i = 0; i < n; ++i) std::swap(c1.genes[i], c2.genes[i]);
  // c1 now holds b's prefix; swap roles so c1 = a-prefix + b-suffix.
  std::swap(c1, c2);
  impose_reservation(c1, cfg);
  impose_reservation(c2, cfg);
  return {std::move(c1), std::move(c2)};
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            const EaConfig& cfg, Rng& rng) {
  const std::size_t n = a.genes.size();
  if (cfg.crossover == CrossoverKind::Uniform) {
    Individual c1 = a;
    Individual c2 = b;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() & 1u) std::swap(c1.genes[i], c2.genes[i]);
    }
    impose_reservation(c1, cfg);
    impose_reservation(c2, cfg);
    return {std::move(c1), std::move(c2)};
  }
  if (n < 2) return {a, b};
  const std::size_t cut = 1 + static_cast<std::size_t>(uniform_below(rng, n - 1));
  return crossover_at(a, b, cut, cfg);
}

Individual mutate(const Individual& a, const EaConfig& cfg, Rng& rng) {
  Individual c = a;
  const std::size_t free_end = std::min(reserved_begin(cfg), c.genes.size());
  if (free_end == 0) return c;
  const auto pos = static_cast<std::size_t>(uniform_below(rng, free_end));
  c.genes[pos] = random_symbol(rng);
  return c;
}

Individual invert_range(const Individual& a, std::size_t first, std::size_t last,
                        const EaConfig& cfg) {
  Individual c = a;
  if (first > last) std::swap(first, last);
  if (last >= c.genes.size()) return c;
  std::reverse(c.genes.begin() + static_cast<std::ptrdiff_t>(first),
               c.genes.begin() + static_cast<std::ptrdiff_t>(last + 1));
  impose_reservation(c, cfg);
  return c;
}

Individual invert(const Individual& a, const EaConfig& cfg, Rng& rng) {
  const std::size_t n = a.genes.size();
  if (n == 0) return a;
  const auto p = static_cast<std::size_t>(uniform_below(rng, n));
  const auto q = static_cast<std::size_t>(uniform_below(rng, n));
  return invert_range(a, std::min(p, q), std::max(p, q), cfg);
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Stagnation: return "stagnation";
    case Termination::EvaluationLimit: return "evaluation-limit";
  }
  return "unknown";
}

EvolutionReport evolve(const BlockSet& blocks, std::uint64_t original_bits, const EaConfig& cfg) {
  cfg.validate();
  if (blocks.total == 0) throw Error(ErrorCode::InvalidConfig, "no input blocks");
  const FitnessEvaluator eval(blocks, original_bits, cfg);
  Rng rng(cfg.rng_seed);
  std::unordered_map<std::string, FitnessDetail> cache;

  EvolutionReport report;
  const std::uint64_t limit = cfg.evaluation_limit();

  auto score = [&](std::vector<Individual>& group) {
    std::vector<const Individual*> batch;
    batch.reserve(group.size());
    for (const auto& ind : group) batch.push_back(&ind);
    const auto details = evaluate_batch(eval, batch, cache, cfg.threads);
    for (std::size_t i = 0; i < group.size(); ++i) {
      group[i].fitness = details[i].fitness;
      group[i].feasible = details[i].feasible;
      ++report.evaluations;
      if (!details[i].feasible) ++report.infeasible_evaluations;
    }
  };

  std::vector<Individual> population;
  population.reserve(cfg.population_size + cfg.children);
  for (std::size_t i = 0; i < cfg.population_size; ++i) population.push_back(random_individual(cfg, rng));
  if (cfg.seed_with_9c && cfg.block_length % 2 == 0 && cfg.mv_count >= 9) {
    const auto nine = ninec::nine_mvs(cfg.block_length);
    for (std::size_t m = 0; m < nine.size(); ++m) {
      std::copy(nine[m].symbols().begin(), nine[m].symbols().end(),
                population[0].genes.begin() + static_cast<std::ptrdiff_t>(m * cfg.block_length));
    }
    impose_reservation(population[0], cfg);
  }
  score(population);

  // Stable sort keeps lower indices first among equal fitness.
  auto by_fitness = [](const Individual& x, const Individual& y) { return x.fitness > y.fitness; };
  std::stable_sort(population.begin(), population.end(), by_fitness);
  report.best = population.front();
  report.best_per_generation.push_back(population.front().fitness);

  std::size_t stagnant = 0;
  for (;;) {
    if (report.evaluations >= limit) {
      report.reason = Termination::EvaluationLimit;
      break;
    }
    if (stagnant >= cfg.stagnation_limit) {
      report.reason = Termination::Stagnation;
      break;
    }

    std::vector<Individual> children;
    children.reserve(cfg.children + 1);
    auto pick = [&]() -> const Individual& {
      return population[static_cast<std::size_t>(uniform_below(rng, population.size()))];
    };
    while (children.size() < cfg.children) {
      const double r = unit_interval(rng);
      if (r < cfg.p_crossover) {
        const Individual& a = pick();
        const Individual& b = pick();
        auto [c1, c2] = crossover(a, b, cfg, rng);
        children.push_back(std::move(c1));
        if (children.size() < cfg.children) children.push_back(std::move(c2));
      } else if (r < cfg.p_crossover + cfg.p_mutation) {
        children.push_back(mutate(pick(), cfg, rng));
      } else if (r < cfg.p_crossover + cfg.p_mutation + cfg.p_inversion) {
        children.push_back(invert(pick(), cfg, rng));
      } else {
        children.push_back(pick());
      }
    }
    score(children);

    // Incumbents precede children, so the stable sort prefers them on ties.
    population.insert(population.end(), std::make_move_iterator(children.begin()),
                      std::make_move_iterator(children.end()));
    std::stable_sort(population.begin(), population.end(), by_fitness);
    population.resize(cfg.population_size);
    ++report.generations;

    const double gen_best = population.front().fitness;
    report.best_per_generation.push_back(gen_best);
    if (gen_best > report.best.fitness) {
      report.best = population.front();
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }
  return report;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t run) noexcept {
  std::uint64_t x = base_seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(run) + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

MultiRunReport run_many(const BlockSet& blocks, std::uint64_t original_bits, const EaConfig& cfg) {
  cfg.validate();
  MultiRunReport m;
  m.runs.reserve(cfg.runs);
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    EaConfig run_cfg = cfg;
    run_cfg.rng_seed = derive_run_seed(cfg.rng_seed, r);
    m.runs.push_back(evolve(blocks, original_bits, run_cfg));
    m.rates.push_back(m.runs.back().best.fitness);
    if (m.rates.back() > m.rates[m.best_run]) m.best_run = r;
  }
  m.mean_rate = std::accumulate(m.rates.begin(), m.rates.end(), 0.0) / static_cast<double>(m.rates.size());
  m.best_rate = m.rates[m.best_run];
  return m;
}

}  // namespace tercode::ea
