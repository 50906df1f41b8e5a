#include "tercode/pipeline.hpp"

#include <cstdio>
#include <sstream>

#include "tercode/baseline9c.hpp"
#include "tercode/container.hpp"
#include "tercode/error.hpp"

namespace tercode {
namespace {

std::vector<MvUsage> usage_of(std::span<const MatchingVector> mvs, const Covering& covering,
                              const Codebook& book) {
  std::vector<MvUsage> out;
  for (std::size_t i = 0; i < mvs.size(); ++i) {
    if (!book.has(i)) continue;
    out.push_back({mvs[i].to_string(), covering.frequencies[i], book.at(i).to_string()});
  }
  return out;
}

void finish_report(RunReport& r, const EncodedStream& stream) {
  r.payload_bits = stream.payload_bits();
  r.compression_rate = compression_rate(r.original_bits, r.payload_bits);
  const auto bytes = write_container(stream);
  r.container_bytes = bytes.size();
  r.overhead_bytes = bytes.size() - stream.payload.bytes().size();
}

std::string fmt_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Ea: return "ea";
    case Method::NineC: return "9c";
    case Method::NineCHc: return "9c-hc";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "ea") return Method::Ea;
  if (name == "9c") return Method::NineC;
  if (name == "9c-hc") return Method::NineCHc;
  throw Error(ErrorCode::InvalidConfig, "unknown method '" + name + "' (expected ea, 9c or 9c-hc)");
}

CompressOutcome compress(const TestSet& ts, const CompressOptions& opts) {
  const std::size_t k = opts.ea.block_length;
  const TernaryString flat = flatten(ts);
  const auto blocks = partition(flat, k);

  CompressOutcome out;
  RunReport& r = out.report;
  r.method = to_string(opts.method);
  r.block_length = k;
  r.original_bits = original_size_bits(ts);

  if (opts.method == Method::NineC || opts.method == Method::NineCHc) {
    auto res = ninec::compress_9c(blocks, k, opts.method == Method::NineCHc, flat.original_length,
                                  opts.fill);
    r.mv_count = res.mvs.size();
    r.mvs = usage_of(res.mvs, res.covering, res.codebook);
    out.stream = std::move(res.stream);
  } else {
    opts.ea.validate();
    const BlockSet set = BlockSet::build(blocks);
    const ea::MultiRunReport runs = ea::run_many(set, r.original_bits, opts.ea);
    const auto mvs = runs.best().best.matching_vectors(k);

    Covering covering = cover(blocks, mvs);
    if (opts.ea.subsume) covering = subsume_merge(blocks, covering, mvs).covering;
    const Codebook book = build_huffman(covering.frequencies);
    out.stream = encode_all(blocks, covering, book, mvs, flat.original_length, opts.fill);

    r.mv_count = opts.ea.mv_count;
    r.mvs = usage_of(mvs, covering, book);
    EaSummary s;
    s.rates = runs.rates;
    s.mean_rate = runs.mean_rate;
    s.best_rate = runs.best_rate;
    for (const auto& run : runs.runs) {
      s.generations.push_back(run.generations);
      s.evaluations.push_back(run.evaluations);
      s.termination.emplace_back(ea::to_string(run.reason));
    }
    r.ea = std::move(s);
  }
  out.stream.block_length = k;
  out.stream.pattern_width = ts.width();
  finish_report(r, out.stream);
  return out;
}

std::vector<RunReport> compare(const TestSet& ts, const CompressOptions& opts) {
  std::vector<RunReport> reports;
  for (Method m : {Method::NineC, Method::NineCHc, Method::Ea}) {
    CompressOptions o = opts;
    o.method = m;
    reports.push_back(compress(ts, o).report);
  }
  return reports;
}

TestSet decompress(const EncodedStream& stream, std::optional<std::uint64_t> width) {
  const std::uint64_t n = width ? *width : stream.pattern_width.value_or(0);
  if (n == 0) throw Error(ErrorCode::WidthMismatch, "pattern width unknown; pass --width");
  if (stream.original_length == 0 || stream.original_length % n != 0) {
    throw Error(ErrorCode::WidthMismatch, "width " + std::to_string(n) + " does not divide " +
                                              std::to_string(stream.original_length) + " bits");
  }
  if (width && stream.pattern_width && *width != *stream.pattern_width) {
    throw Error(ErrorCode::WidthMismatch, "width " + std::to_string(*width) +
                                              " differs from stored width " +
                                              std::to_string(*stream.pattern_width));
  }
  const std::string bits = decode(stream);
  std::vector<std::vector<Trit>> rows;
  rows.reserve(bits.size() / n);
  for (std::size_t off = 0; off < bits.size(); off += n) {
    rows.push_back(trits_from_string(std::string_view(bits).substr(off, n)));
  }
  return TestSet(std::move(rows));
}

RunReport describe_stream(const EncodedStream& stream) {
  RunReport r;
  r.method = "container";
  r.block_length = stream.block_length;
  r.mv_count = stream.mvs.size();
  r.original_bits = stream.original_length;
  for (std::size_t i = 0; i < stream.mvs.size(); ++i) {
    r.mvs.push_back({stream.mvs[i].to_string(), 0, stream.codebook.at(i).to_string()});
  }
  if (r.original_bits > 0) {
    finish_report(r, stream);
  } else {
    r.payload_bits = stream.payload_bits();
  }
  return r;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["K"] = r.block_length;
  j["L"] = r.mv_count;
  j["original_bits"] = r.original_bits;
  j["payload_bits"] = r.payload_bits;
  j["compression_rate"] = r.compression_rate;
  j["container_bytes"] = r.container_bytes;
  j["overhead_bytes"] = r.overhead_bytes;
  auto& mvs = j["mvs"] = nlohmann::json::array();
  for (const auto& u : r.mvs) {
    mvs.push_back({{"mv", u.mv},
                   {"frequency", u.frequency},
                   {"codeword", u.codeword},
                   {"code_length", u.codeword.size()}});
  }
  if (r.ea) {
    j["ea"] = {{"rates", r.ea->rates},
               {"mean_rate", r.ea->mean_rate},
               {"best_rate", r.ea->best_rate},
               {"generations", r.ea->generations},
               {"evaluations", r.ea->evaluations},
               {"termination", r.ea->termination}};
  }
  if (r.duration_ms) j["duration_ms"] = *r.duration_ms;
  return j;
}

nlohmann::json to_json(const std::vector<RunReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {{"reports", arr}};
}

std::string format_table(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %4s %5s %12s %12s %9s %9s %9s\n", "method", "K", "L",
                "orig_bits", "payload", "rate%", "ea_mean%", "ea_best%");
  out << line;
  for (const auto& r : reports) {
    const std::string mean = r.ea ? fmt_rate(r.ea->mean_rate) : "-";
    const std::string best = r.ea ? fmt_rate(r.ea->best_rate) : "-";
    std::snprintf(line, sizeof line, "%-10s %4zu %5zu %12llu %12llu %9s %9s %9s\n", r.method.c_str(),
                  r.block_length, r.mv_count, static_cast<unsigned long long>(r.original_bits),
                  static_cast<unsigned long long>(r.payload_bits), fmt_rate(r.compression_rate).c_str(),
                  mean.c_str(), best.c_str());
    out << line;
  }
  if (reports.size() == 1) {
    const auto& r = reports.front();
    out << "container: " << r.container_bytes << " bytes (" << r.overhead_bytes
        << " bytes header/tables)\n";
    if (r.duration_ms) out << "duration: " << *r.duration_ms << " ms\n";
  }
  return out.str();
}

}  // namespace tercode
