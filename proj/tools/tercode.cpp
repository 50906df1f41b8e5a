// tercode: ternary test-set compression with evolved matching vectors.
//
//   tercode compress   --input set.txt --output set.tcc [--method ea|9c|9c-hc] ...
//   tercode decompress --input set.tcc --output set.txt [--width n]
//   tercode stats      --input set.tcc
//   tercode compare    --input set.txt ...
//   tercode gen-corpus --output set.txt [--patterns T --width n ...]
//
// Exit codes: 0 ok, 1 other failure, 2 usage, 3 input format, 4 container.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tercode/container.hpp"
#include "tercode/corpus.hpp"
#include "tercode/error.hpp"
#include "tercode/pipeline.hpp"

namespace {

using namespace tercode;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kInputFormat = 3, kContainer = 4 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput:
    case ErrorCode::RaggedRows:
    case ErrorCode::IllegalCharacter: return kInputFormat;
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::CorruptHeader:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::TruncatedPayload:
    case ErrorCode::DanglingBits:
    case ErrorCode::UnknownCodeword: return kContainer;
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidCorpusSpec:
    case ErrorCode::OddK:
    case ErrorCode::WidthMismatch:
    case ErrorCode::UnsupportedBlockLength: return kUsage;
    default: return kFailure;
  }
}

/// Search/encoding flags shared by compress and compare.
struct SearchFlags {
  std::string input;
  std::string config_path;
  std::size_t k = 12;
  std::size_t l = 64;
  std::uint64_t seed = 1;
  std::size_t runs = 5;
  std::size_t population = 10;
  std::size_t children = 5;
  double p_crossover = 0.3;
  double p_mutation = 0.3;
  double p_inversion = 0.1;
  std::size_t stagnation = 500;
  std::uint64_t max_evals = 0;
  bool reserve_all_u = true;
  bool subsume = false;
  std::string crossover = "one-point";
  bool seed_9c = false;
  std::size_t threads = 1;
  std::string fill = "zero";
  std::string report = "table";
  bool timing = false;

  struct Opts {
    CLI::Option* k;
    CLI::Option* l;
    CLI::Option* seed;
    CLI::Option* runs;
    CLI::Option* population;
    CLI::Option* children;
    CLI::Option* p_crossover;
    CLI::Option* p_mutation;
    CLI::Option* p_inversion;
    CLI::Option* stagnation;
    CLI::Option* max_evals;
    CLI::Option* reserve;
    CLI::Option* subsume;
    CLI::Option* crossover;
    CLI::Option* seed_9c;
    CLI::Option* threads;
  } opts{};

  void attach(CLI::App& app) {
    app.add_option("--input,-i", input, "Test-set file (one pattern per line over 0/1/X)")->required();
    app.add_option("--config", config_path, "key=value file with search settings");
    opts.k = app.add_option("-K,--block-length", k, "Input block length K");
    opts.l = app.add_option("-L,--mv-count", l, "Number of matching vectors L (ea)");
    opts.seed = app.add_option("--seed", seed, "RNG seed (fallback: TERCODE_SEED)");
    opts.runs = app.add_option("--runs", runs, "Independent EA runs");
    opts.population = app.add_option("--population", population, "Population size S");
    opts.children = app.add_option("--children", children, "Children per generation C");
    opts.p_crossover = app.add_option("--p-crossover", p_crossover, "Crossover probability");
    opts.p_mutation = app.add_option("--p-mutation", p_mutation, "Mutation probability");
    opts.p_inversion = app.add_option("--p-inversion", p_inversion, "Inversion probability");
    opts.stagnation = app.add_option("--stagnation", stagnation, "Generations without improvement before stopping");
    opts.max_evals = app.add_option("--max-evals", max_evals, "Fitness evaluation limit (0 = 100*S*C)");
    opts.reserve = app.add_flag("--reserve-all-u,!--no-reserve-all-u", reserve_all_u,
                                "Pin the last MV to all-U");
    opts.subsume = app.add_flag("--subsume", subsume, "Enable the subsumption merge pass");
    opts.crossover = app.add_option("--crossover", crossover, "one-point or uniform")
                         ->check(CLI::IsMember({"one-point", "uniform"}));
    opts.seed_9c = app.add_flag("--seed-9c", seed_9c, "Seed one individual with the 9C vectors");
    opts.threads = app.add_option("--threads", threads, "Threads for child evaluation");
    app.add_option("--fill", fill, "Value for X at U positions")
        ->check(CLI::IsMember({"zero", "one", "random"}));
    app.add_option("--report", report, "Report format")->check(CLI::IsMember({"table", "json"}));
    app.add_flag("--timing", timing, "Include wall-clock duration in the report");
  }

  /// Defaults, then config file, then TERCODE_SEED, then explicit flags.
  CompressOptions resolve() const {
    CompressOptions o;
    ea::EaConfig& c = o.ea;
    if (!config_path.empty()) c = ea::load_config_file(config_path, c);
    if (opts.seed->count() == 0) {
      if (const char* env = std::getenv("TERCODE_SEED")) ea::apply_setting(c, "seed", env);
    }
    auto set = [](CLI::Option* opt, auto& dst, const auto& src) {
      if (opt->count() > 0) dst = src;
    };
    set(opts.k, c.block_length, k);
    set(opts.l, c.mv_count, l);
    set(opts.seed, c.rng_seed, seed);
    set(opts.runs, c.runs, runs);
    set(opts.population, c.population_size, population);
    set(opts.children, c.children, children);
    set(opts.p_crossover, c.p_crossover, p_crossover);
    set(opts.p_mutation, c.p_mutation, p_mutation);
    set(opts.p_inversion, c.p_inversion, p_inversion);
    set(opts.stagnation, c.stagnation_limit, stagnation);
    set(opts.max_evals, c.max_evaluations, max_evals);
    set(opts.reserve, c.reserve_all_u, reserve_all_u);
    set(opts.subsume, c.subsume, subsume);
    set(opts.seed_9c, c.seed_with_9c, seed_9c);
    set(opts.threads, c.threads, threads);
    if (opts.crossover->count() > 0) ea::apply_setting(c, "crossover", crossover);

    o.fill.mode = fill == "one" ? FillMode::One : fill == "random" ? FillMode::Random : FillMode::Zero;
    o.fill.seed = c.rng_seed;
    return o;
  }
};

TestSet load_test_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_test_set(in);
}

void emit(const std::vector<RunReport>& reports, const std::string& format, bool single) {
  if (format == "json") {
    const auto j = single ? to_json(reports.front()) : to_json(reports);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << format_table(reports);
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary test-set compression with matching vectors and Huffman codes"};
  app.require_subcommand(1);

  // compress
  SearchFlags compress_flags;
  std::string compress_output;
  std::string method = "ea";
  auto* compress_cmd = app.add_subcommand("compress", "Compress a test set into a container");
  compress_flags.attach(*compress_cmd);
  compress_cmd->add_option("--output,-o", compress_output, "Container path");
  compress_cmd->add_option("--method,-m", method, "ea, 9c or 9c-hc")
      ->check(CLI::IsMember({"ea", "9c", "9c-hc"}));

  // compare
  SearchFlags compare_flags;
  auto* compare_cmd = app.add_subcommand("compare", "Run 9c, 9c-hc and ea side by side");
  compare_flags.attach(*compare_cmd);

  // decompress
  std::string dec_input, dec_output;
  std::uint64_t dec_width = 0;
  auto* decompress_cmd = app.add_subcommand("decompress", "Restore a fully specified test set");
  decompress_cmd->add_option("--input,-i", dec_input, "Container path")->required();
  decompress_cmd->add_option("--output,-o", dec_output, "Test-set path (default: stdout)");
  auto* width_opt = decompress_cmd->add_option("--width", dec_width, "Pattern width n");

  // stats
  std::string stats_input, stats_report = "table";
  auto* stats_cmd = app.add_subcommand("stats", "Describe a container");
  stats_cmd->add_option("--input,-i", stats_input, "Container path")->required();
  stats_cmd->add_option("--report", stats_report, "Report format")
      ->check(CLI::IsMember({"table", "json"}));

  // gen-corpus
  CorpusSpec corpus;
  std::string corpus_output;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Write a synthetic clustered test set");
  gen_cmd->add_option("--output,-o", corpus_output, "Test-set path (default: stdout)");
  gen_cmd->add_option("--patterns", corpus.patterns, "Pattern count T");
  gen_cmd->add_option("--width", corpus.width, "Pattern width n");
  gen_cmd->add_option("--x-density", corpus.x_density, "Probability of X per position");
  gen_cmd->add_option("--templates", corpus.templates, "Number of template blocks");
  gen_cmd->add_option("--template-width", corpus.template_width, "Template width (0 = n)");
  gen_cmd->add_option("--flip", corpus.flip_probability, "Per-bit flip probability");
  auto* corpus_seed = gen_cmd->add_option("--seed", corpus.seed, "RNG seed (fallback: TERCODE_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*compress_cmd) {
      const auto start = std::chrono::steady_clock::now();
      CompressOptions opts = compress_flags.resolve();
      opts.method = parse_method(method);
      const TestSet ts = load_test_set(compress_flags.input);
      CompressOutcome out = compress(ts, opts);
      if (!compress_output.empty()) write_file_bytes(compress_output, write_container(out.stream));
      if (compress_flags.timing) out.report.duration_ms = elapsed_ms(start);
      emit({out.report}, compress_flags.report, true);
    } else if (*compare_cmd) {
      const auto start = std::chrono::steady_clock::now();
      const CompressOptions opts = compare_flags.resolve();
      const TestSet ts = load_test_set(compare_flags.input);
      auto reports = compare(ts, opts);
      if (compare_flags.timing) {
        for (auto& r : reports) r.duration_ms = elapsed_ms(start);
      }
      emit(reports, compare_flags.report, false);
    } else if (*decompress_cmd) {
      const EncodedStream stream = read_container(read_file_bytes(dec_input));
      std::optional<std::uint64_t> width;
      if (width_opt->count() > 0) width = dec_width;
      const TestSet ts = decompress(stream, width);
      if (dec_output.empty()) {
        write_test_set(std::cout, ts);
      } else {
        std::ofstream out(dec_output);
        if (!out) throw std::runtime_error("cannot write " + dec_output);
        write_test_set(out, ts);
      }
    } else if (*stats_cmd) {
      const EncodedStream stream = read_container(read_file_bytes(stats_input));
      emit({describe_stream(stream)}, stats_report, true);
    } else if (*gen_cmd) {
      if (corpus_seed->count() == 0) {
        if (const char* env = std::getenv("TERCODE_SEED")) {
          try {
            corpus.seed = std::stoull(env);
          } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidConfig, std::string("bad TERCODE_SEED: ") + env);
          }
        }
      }
      const TestSet ts = generate_corpus(corpus);
      if (corpus_output.empty()) {
        write_test_set(std::cout, ts);
      } else {
        std::ofstream out(corpus_output);
        if (!out) throw std::runtime_error("cannot write " + corpus_output);
        write_test_set(out, ts);
      }
    }
  } catch (const Error& e) {
    std::cerr << "tercode: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "tercode: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
