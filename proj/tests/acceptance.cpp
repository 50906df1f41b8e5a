// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tercode/baseline9c.hpp"
#include "tercode/codec.hpp"
#include "tercode/container.hpp"
#include "tercode/corpus.hpp"
#include "tercode/ea.hpp"
#include "tercode/huffman.hpp"
#include "tercode/pipeline.hpp"

using namespace tercode;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<MatchingVector> mvs_of(const std::vector<std::string>& rows) {
  std::vector<MatchingVector> out;
  for (const auto& r : rows) out.push_back(MatchingVector::from_string(r));
  return out;
}

std::vector<InputBlock> blocks_of(const std::vector<std::string>& rows) {
  std::vector<InputBlock> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({trits_from_string(rows[i]), i + 1});
  return out;
}

TestSet grid_of(const std::vector<std::string>& rows) {
  std::vector<std::vector<Trit>> g;
  for (const auto& r : rows) g.push_back(trits_from_string(r));
  return TestSet(std::move(g));
}

std::string flat_text(const TestSet& ts) { return trits_to_string(flatten(ts).symbols); }

bool agrees_on_specified(const std::string& source, const std::string& decoded) {
  if (source.size() != decoded.size()) return false;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (decoded[i] != '0' && decoded[i] != '1') return false;
    if (source[i] != 'X' && source[i] != decoded[i]) return false;
  }
  return true;
}

// The clustered corpus used by the EA criteria: T=400, n=250 (100000 bits),
// 4 templates, flip 0.05, X density 0.3.
CorpusSpec clustered(std::uint64_t seed) {
  CorpusSpec spec;
  spec.patterns = 400;
  spec.width = 250;
  spec.templates = 4;
  spec.flip_probability = 0.05;
  spec.x_density = 0.3;
  spec.seed = seed;
  return spec;
}

Outcome merge_example() {
  std::vector<std::string> rows;
  rows.insert(rows.end(), 5, "1111");
  rows.insert(rows.end(), 3, "1110");
  rows.insert(rows.end(), 2, "0000");
  const auto input = blocks_of(rows);
  const auto table = mvs_of({"111U", "1110", "0000"});

  const Covering cov = cover(input, table);
  const Codebook book = build_huffman(cov.frequencies);
  std::vector<unsigned> lengths;
  for (std::size_t i = 0; i < 3; ++i) lengths.push_back(book.at(i).length);
  const std::uint64_t huff = payload_bits(cov.frequencies, book, table);
  const SubsumeResult merged = subsume_merge(input, cov, table);

  Outcome o;
  o.pass = cov.frequencies == std::vector<std::uint64_t>{5, 3, 2} && lengths == std::vector<unsigned>{1, 2, 2} &&
           huff == 20 && merged.payload_bits == 18 && !merged.active[1] && merged.active[0] && merged.active[2];
  std::ostringstream d;
  d << "lengths " << lengths[0] << "," << lengths[1] << "," << lengths[2] << "; payload " << huff << " -> "
    << merged.payload_bits << " bits, 1110 " << (merged.active[1] ? "kept" : "dropped");
  o.detail = d.str();
  return o;
}

Outcome nine_c_fidelity() {
  const std::vector<std::string> want_mvs{"000000", "111111", "000111", "111000", "111UUU",
                                          "UUU111", "000UUU", "UUU000", "UUUUUU"};
  const std::vector<std::string> want_codes{"0", "10", "11000", "11001", "11010", "11011", "11100", "11101", "11111"};
  const auto got_mvs = ninec::nine_mvs(6);
  const Codebook book = ninec::nine_codebook();
  bool mvs_ok = got_mvs.size() == 9;
  bool codes_ok = book.size() == 9;
  for (std::size_t i = 0; i < 9 && mvs_ok && codes_ok; ++i) {
    mvs_ok = got_mvs[i].to_string() == want_mvs[i];
    codes_ok = book.at(i).to_string() == want_codes[i];
  }
  const std::string enc = encode_block({trits_from_string("111100"), 1}, got_mvs[4], book, 4).to_string();

  Outcome o;
  o.pass = mvs_ok && codes_ok && book.is_prefix_free() && enc == "11010100";
  o.detail = std::string("vectors ") + (mvs_ok ? "match" : "differ") + ", codewords " +
             (codes_ok ? "match" : "differ") + (book.is_prefix_free() ? ", prefix-free" : ", NOT prefix-free") +
             ", 111100 -> " + enc;
  return o;
}

Outcome dominance() {
  std::mt19937_64 rng(20240601);
  const std::size_t ks[] = {4, 6, 8, 12};
  std::size_t corpora = 0;
  std::size_t violations = 0;
  double min_gap = 1e9;
  for (int i = 0; i < 240; ++i) {
    const std::size_t k = ks[i % 4];
    TestSet ts = grid_of({"0"});
    if (i % 2 == 0) {
      const double density = static_cast<double>(rng() % 95) / 100.0;
      ts = grid_of(oracle::random_rows(rng, 1 + rng() % 60, 1 + rng() % 80, density));
    } else {
      CorpusSpec spec;
      spec.patterns = 1 + rng() % 80;
      spec.width = 1 + rng() % 120;
      spec.x_density = static_cast<double>(rng() % 100) / 100.0;
      spec.templates = 1 + rng() % 6;
      spec.flip_probability = static_cast<double>(rng() % 20) / 100.0;
      spec.seed = rng();
      ts = generate_corpus(spec);
    }
    CompressOptions opts;
    opts.ea.block_length = k;
    opts.method = Method::NineC;
    const double fixed = compress(ts, opts).report.compression_rate;
    opts.method = Method::NineCHc;
    const double hc = compress(ts, opts).report.compression_rate;
    ++corpora;
    if (hc < fixed) ++violations;
    min_gap = std::min(min_gap, hc - fixed);
  }
  Outcome o;
  o.pass = corpora >= 200 && violations == 0;
  std::ostringstream d;
  d << corpora << " corpora, K in {4,6,8,12}, " << violations << " violations, min(9c-hc - 9c) = " << min_gap;
  o.detail = d.str();
  return o;
}

Outcome huffman_optimality() {
  std::mt19937_64 rng(7001);
  std::size_t samples = 0;
  std::size_t mismatches = 0;
  while (samples < 1200) {
    std::vector<std::uint64_t> f(1 + rng() % 8);
    for (auto& x : f) x = (rng() % 3 == 0) ? 0 : 1 + rng() % 1000;
    const auto nonzero = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](auto x) { return x > 0; }));
    if (nonzero == 0 || nonzero > 5) continue;
    const Codebook book = build_huffman(f);
    std::uint64_t cost = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] > 0) cost += f[i] * book.at(i).length;
    }
    if (cost != oracle::brute_force_min_code_cost(f) || !book.is_prefix_free()) ++mismatches;
    ++samples;
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = std::to_string(samples) + " frequency vectors with <= 5 nonzero entries, " + std::to_string(mismatches) +
             " differ from brute force";
  return o;
}

Outcome round_trip() {
  std::mt19937_64 rng(515);
  const std::size_t ks[] = {1, 2, 5, 8, 12, 13};
  std::size_t sets = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (int s = 0; s < 520; ++s) {
    const std::size_t t = 1 + rng() % 30;
    const std::size_t n = 1 + rng() % 50;
    const TestSet ts = grid_of(oracle::random_rows(rng, t, n, static_cast<double>(rng() % 90) / 100.0));
    const std::string source = flat_text(ts);
    ++sets;
    for (std::size_t k : ks) {
      const auto input = partition(flatten(ts), k);
      std::vector<MatchingVector> table;
      for (std::size_t i = 0; i < rng() % 8; ++i) {
        std::string v(k, 'U');
        for (auto& c : v) c = "01U"[rng() % 3];
        table.push_back(MatchingVector::from_string(v));
      }
      table.push_back(MatchingVector::all_unspecified(k));
      const Covering cov = cover(input, table);
      const FillPolicy fill{static_cast<FillMode>(rng() % 3), rng()};
      const EncodedStream stream = encode_all(input, cov, build_huffman(cov.frequencies), table, t * n, fill);
      const std::string out = decode(read_container(write_container(stream)));
      ++checks;
      if (out.size() != t * n || !agrees_on_specified(source, out)) ++failures;
    }
    // End to end through the EA pipeline on one K per set.
    CompressOptions opts;
    opts.ea.block_length = ks[s % 6];
    opts.ea.mv_count = 8;
    opts.ea.runs = 1;
    opts.ea.stagnation_limit = 10;
    opts.ea.max_evaluations = 200;
    opts.ea.rng_seed = rng();
    const auto outcome = compress(ts, opts);
    const TestSet back = decompress(read_container(write_container(outcome.stream)), std::nullopt);
    ++checks;
    if (!agrees_on_specified(source, flat_text(back)) || back.pattern_count() != t) ++failures;
  }
  Outcome o;
  o.pass = sets >= 500 && failures == 0;
  o.detail = std::to_string(sets) + " test sets, " + std::to_string(checks) + " encode/decode checks over K in " +
             "{1,2,5,8,12,13}, " + std::to_string(failures) + " failures";
  return o;
}

Outcome ea_sanity() {
  const TestSet ts = generate_corpus(clustered(1));
  const auto flat = flatten(ts);
  const BlockSet set = BlockSet::build(partition(flat, 12));
  std::size_t bad_series = 0, regressions = 0, penalties = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    ea::EaConfig cfg;
    cfg.rng_seed = seed;
    const auto r = ea::evolve(set, flat.original_length, cfg);
    if (!std::is_sorted(r.best_per_generation.begin(), r.best_per_generation.end())) ++bad_series;
    if (r.best.fitness < r.initial_best()) ++regressions;
    penalties += r.infeasible_evaluations;
  }
  Outcome o;
  o.pass = bad_series == 0 && regressions == 0 && penalties == 0;
  std::ostringstream d;
  d << "50 seeds on corpus seed 1 (" << flat.original_length << " bits): " << bad_series
    << " decreasing series, " << regressions << " final < initial, " << penalties << " penalty evaluations";
  o.detail = d.str();
  return o;
}

Outcome ea_vs_baseline() {
  int wins = 0;
  std::ostringstream d;
  d << "corpus seeds 1-5:";
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const TestSet ts = generate_corpus(clustered(seed));
    CompressOptions opts;  // K=12, L=64, S=10, C=5, runs=5
    opts.method = Method::NineCHc;
    const double hc = compress(ts, opts).report.compression_rate;
    opts.method = Method::Ea;
    const auto ea_report = compress(ts, opts).report;
    const double mean = ea_report.ea->mean_rate;
    if (mean > hc) ++wins;
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.2f vs %.2f;", mean, hc);
    d << buf;
  }
  Outcome o;
  o.pass = wins >= 4;
  o.detail = "EA mean beats 9c-hc on " + std::to_string(wins) + "/5 (" + d.str() + ")";
  return o;
}

Outcome container_determinism() {
  CorpusSpec spec = clustered(9);
  spec.patterns = 60;
  spec.width = 80;
  const TestSet ts = generate_corpus(spec);
  CompressOptions opts;
  opts.ea.block_length = 8;
  opts.ea.mv_count = 16;
  opts.ea.runs = 2;
  opts.ea.rng_seed = 42;
  const auto a = write_container(compress(ts, opts).stream);
  const auto b = write_container(compress(ts, opts).stream);
  opts.ea.threads = 3;
  const auto c = write_container(compress(ts, opts).stream);

  std::mt19937_64 rng(808);
  std::size_t streams = 0, mismatches = 0;
  for (int i = 0; i < 150; ++i) {
    const std::size_t k = 1 + rng() % 16;
    const TestSet r = grid_of(oracle::random_rows(rng, 1 + rng() % 20, 1 + rng() % 40, 0.4));
    const auto input = partition(flatten(r), k);
    std::vector<MatchingVector> table;
    for (std::size_t j = 0; j < rng() % 10; ++j) {
      std::string v(k, 'U');
      for (auto& ch : v) ch = "01U"[rng() % 3];
      table.push_back(MatchingVector::from_string(v));
    }
    table.push_back(MatchingVector::all_unspecified(k));
    const Covering cov = cover(input, table);
    EncodedStream s = encode_all(input, cov, build_huffman(cov.frequencies), table, flatten(r).original_length);
    if (rng() & 1u) s.pattern_width = r.width();
    ++streams;
    if (!(read_container(write_container(s)) == s)) ++mismatches;
  }
  Outcome o;
  o.pass = a == b && a == c && mismatches == 0;
  o.detail = std::string("repeat runs ") + (a == b ? "identical" : "DIFFER") + ", threaded " +
             (a == c ? "identical" : "DIFFERS") + "; " + std::to_string(streams) + " random streams, " +
             std::to_string(mismatches) + " round-trip mismatches";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"merge example: Huffman 20 bits, 18 after subsumption", merge_example},
      {"9C vectors, codewords and 111100 encoding", nine_c_fidelity},
      {"9C+HC never worse than fixed 9C", dominance},
      {"Huffman equals brute-force optimum", huffman_optimality},
      {"encode/decode round-trip", round_trip},
      {"EA elitism and feasibility", ea_sanity},
      {"EA mean beats 9C+HC on clustered corpora", ea_vs_baseline},
      {"container determinism and round-trip", container_determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
