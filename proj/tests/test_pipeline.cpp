#include "doctest.h"
#include "test_util.hpp"
#include "tercode/container.hpp"
#include "tercode/corpus.hpp"
#include "tercode/pipeline.hpp"

using namespace tercode;
using testutil::code_of;
using testutil::from_rows;

namespace {

CompressOptions quick(Method m, std::size_t k, std::size_t l = 8) {
  CompressOptions o;
  o.method = m;
  o.ea.block_length = k;
  o.ea.mv_count = l;
  o.ea.runs = 2;
  o.ea.stagnation_limit = 30;
  o.ea.max_evaluations = 1000;
  return o;
}

TestSet small_corpus(std::uint64_t seed) {
  CorpusSpec spec;
  spec.patterns = 40;
  spec.width = 30;
  spec.seed = seed;
  return generate_corpus(spec);
}

void check_agrees(const TestSet& source, const TestSet& restored) {
  REQUIRE(restored.pattern_count() == source.pattern_count());
  REQUIRE(restored.width() == source.width());
  for (std::size_t r = 0; r < source.pattern_count(); ++r) {
    for (std::size_t c = 0; c < source.width(); ++c) {
      const Trit t = source.rows()[r][c];
      CHECK(restored.rows()[r][c] != Trit::X);
      if (t != Trit::X) CHECK(restored.rows()[r][c] == t);
    }
  }
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("ea") == Method::Ea);
  CHECK(parse_method("9c") == Method::NineC);
  CHECK(parse_method("9c-hc") == Method::NineCHc);
  CHECK(std::string(to_string(Method::NineCHc)) == "9c-hc");
  CHECK(code_of([] { parse_method("lzw"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("9c on repeated 111000 saves one bit in six") {
  const TestSet ts = from_rows({"111000111000", "111000111000"});
  const auto out = compress(ts, quick(Method::NineC, 6));
  CHECK(out.report.payload_bits == 20);
  CHECK(out.report.compression_rate == doctest::Approx(16.6667).epsilon(1e-4));
}

TEST_CASE("9c requires even K") {
  CHECK(code_of([] { compress(from_rows({"0101"}), quick(Method::NineC, 5)); }) == ErrorCode::OddK);
  CHECK(code_of([] { compress(from_rows({"0101"}), quick(Method::NineCHc, 3)); }) == ErrorCode::OddK);
}

TEST_CASE("every method round-trips through the container") {
  const TestSet ts = small_corpus(3);
  for (auto m : {Method::Ea, Method::NineC, Method::NineCHc}) {
    auto o = quick(m, 6);
    o.ea.subsume = true;
    const auto out = compress(ts, o);
    const auto stored = read_container(write_container(out.stream));
    CHECK(stored == out.stream);
    check_agrees(ts, decompress(stored, std::nullopt));
    CHECK(out.report.compression_rate ==
          doctest::Approx(compression_rate(out.report.original_bits, out.report.payload_bits)));
    CHECK(out.report.container_bytes == write_container(out.stream).size());
  }
}

TEST_CASE("decompress width handling") {
  const TestSet ts = from_rows({"0101X0", "110X00"});
  auto out = compress(ts, quick(Method::NineCHc, 4));
  CHECK(decompress(out.stream, 6).width() == 6);
  CHECK(code_of([&] { decompress(out.stream, 4); }) == ErrorCode::WidthMismatch);
  out.stream.pattern_width.reset();
  CHECK(code_of([&] { decompress(out.stream, std::nullopt); }) == ErrorCode::WidthMismatch);
  CHECK(code_of([&] { decompress(out.stream, 5); }) == ErrorCode::WidthMismatch);
  CHECK(decompress(out.stream, 3).pattern_count() == 4);
}

TEST_CASE("compare matches individual compress runs") {
  const TestSet ts = small_corpus(4);
  const auto opts = quick(Method::Ea, 6);
  const auto reports = compare(ts, opts);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].method == "9c");
  CHECK(reports[1].method == "9c-hc");
  CHECK(reports[2].method == "ea");
  CHECK(reports[1].compression_rate >= reports[0].compression_rate);
  REQUIRE(reports[2].ea.has_value());
  CHECK(reports[2].ea->best_rate >= reports[2].ea->mean_rate);

  for (std::size_t i = 0; i < 3; ++i) {
    auto o = opts;
    o.method = parse_method(reports[i].method);
    CHECK(compress(ts, o).report.compression_rate == reports[i].compression_rate);
  }
  CHECK(to_json(compare(ts, opts)).dump() == to_json(reports).dump());
}

TEST_CASE("json report schema") {
  const auto out = compress(small_corpus(5), quick(Method::Ea, 6));
  const auto j = to_json(out.report);
  for (const char* key : {"method", "K", "L", "original_bits", "payload_bits",
                          "compression_rate", "container_bytes", "overhead_bytes", "mvs", "ea"}) {
    CHECK_MESSAGE(j.contains(key), std::string(key));
  }
  CHECK_FALSE(j.contains("duration_ms"));
  CHECK(j["ea"]["rates"].size() == 2);
  CHECK(to_json(std::vector<RunReport>{out.report}).contains("reports"));
  CHECK(format_table({out.report}).find("ea") != std::string::npos);
}

TEST_CASE("describe_stream reads back the stored numbers") {
  const auto out = compress(small_corpus(6), quick(Method::NineCHc, 8));
  const auto d = describe_stream(out.stream);
  CHECK(d.payload_bits == out.report.payload_bits);
  CHECK(d.original_bits == out.report.original_bits);
  CHECK(d.block_length == 8);
}

TEST_CASE("corpus generator") {
  CorpusSpec all_x;
  all_x.patterns = 5;
  all_x.width = 7;
  all_x.x_density = 1.0;
  CHECK(format_test_set(generate_corpus(all_x)) == std::string(5 * 8, 'X').replace(7, 1, "\n")
                                                       .replace(15, 1, "\n").replace(23, 1, "\n")
                                                       .replace(31, 1, "\n").replace(39, 1, "\n"));

  CorpusSpec same;
  same.patterns = 20;
  same.width = 16;
  same.templates = 1;
  same.flip_probability = 0.0;
  same.x_density = 0.0;
  const TestSet ts = generate_corpus(same);
  for (const auto& row : ts.rows()) CHECK(row == ts.rows().front());

  CorpusSpec a;
  a.patterns = 30;
  a.width = 40;
  a.seed = 77;
  CHECK(generate_corpus(a) == generate_corpus(a));
  auto b = a;
  b.seed = 78;
  CHECK_FALSE(generate_corpus(a) == generate_corpus(b));

  auto bad = a;
  bad.x_density = 1.5;
  CHECK(code_of([&] { generate_corpus(bad); }) == ErrorCode::InvalidCorpusSpec);
  bad = a;
  bad.patterns = 0;
  CHECK(code_of([&] { generate_corpus(bad); }) == ErrorCode::InvalidCorpusSpec);
}
