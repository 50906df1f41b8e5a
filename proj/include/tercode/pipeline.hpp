#pragma once

// Determine MVs -> cover -> encode, for each compression method, plus the
// report structure the CLI prints.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tercode/codec.hpp"
#include "tercode/core.hpp"
#include "tercode/ea.hpp"

namespace tercode {

enum class Method : std::uint8_t { Ea, NineC, NineCHc };

const char* to_string(Method m) noexcept;
/// "ea", "9c", "9c-hc"; throws InvalidConfig.
Method parse_method(const std::string& name);

struct CompressOptions {
  Method method = Method::Ea;
  /// Block length, MV count and search parameters; K is used by every method.
  ea::EaConfig ea;
  FillPolicy fill;
};

struct MvUsage {
  std::string mv;
  std::uint64_t frequency = 0;
  std::string codeword;
};

struct EaSummary {
  std::vector<double> rates;
  double mean_rate = 0.0;
  double best_rate = 0.0;
  std::vector<std::size_t> generations;
  std::vector<std::uint64_t> evaluations;
  std::vector<std::string> termination;
};

struct RunReport {
  std::string method;
  std::size_t block_length = 0;
  std::size_t mv_count = 0;
  std::uint64_t original_bits = 0;
  std::uint64_t payload_bits = 0;
  double compression_rate = 0.0;
  std::uint64_t container_bytes = 0;
  std::uint64_t overhead_bytes = 0;
  std::vector<MvUsage> mvs;
  std::optional<EaSummary> ea;
  /// Only filled when timing is requested; keeps default reports reproducible.
  std::optional<double> duration_ms;
};

struct CompressOutcome {
  EncodedStream stream;
  RunReport report;
};

/// Runs the selected method end to end. For the EA the container holds the
/// best MV set over all runs.
CompressOutcome compress(const TestSet& ts, const CompressOptions& opts);

/// 9c, 9c-hc and ea on the same input, each exactly as compress() would run it.
std::vector<RunReport> compare(const TestSet& ts, const CompressOptions& opts);

/// Grid view of a decoded stream. Width comes from `width` or the stream's
/// stored pattern width; throws WidthMismatch.
TestSet decompress(const EncodedStream& stream, std::optional<std::uint64_t> width);

/// Describes a stored container (no original test set needed).
RunReport describe_stream(const EncodedStream& stream);

nlohmann::json to_json(const RunReport& r);
nlohmann::json to_json(const std::vector<RunReport>& reports);
std::string format_table(const std::vector<RunReport>& reports);

}  // namespace tercode
