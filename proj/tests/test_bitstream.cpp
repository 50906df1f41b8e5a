#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "tercode/bitstream.hpp"

using namespace tercode;

TEST_CASE("BitBuffer packs MSB-first with zero padding") {
  BitBuffer b;
  b.append(0b101, 3);
  b.push_back(true);
  CHECK(b.size() == 4);
  CHECK(b.to_string() == "1011");
  REQUIRE(b.bytes().size() == 1);
  CHECK(b.bytes()[0] == 0b10110000);

  b.append(0xff, 8);
  CHECK(b.size() == 12);
  CHECK(b.bytes()[1] == 0b11110000);
}

TEST_CASE("BitBuffer from bytes clears pad bits") {
  const BitBuffer b({0xff}, 3);
  CHECK(b.to_string() == "111");
  CHECK(b.bytes()[0] == 0b11100000);
  CHECK(b == BitBuffer::from_string("111"));
  CHECK(testutil::code_of([] { BitBuffer({0xff}, 9); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("property: append of buffers equals string concatenation") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    std::string a(rng() % 40, '0'), c(rng() % 40, '0');
    for (auto& x : a) x = (rng() & 1u) ? '1' : '0';
    for (auto& x : c) x = (rng() & 1u) ? '1' : '0';
    BitBuffer joined = BitBuffer::from_string(a);
    joined.append(BitBuffer::from_string(c));
    CHECK(joined == BitBuffer::from_string(a + c));

    BitReader r(joined);
    std::string read;
    while (!r.at_end()) read.push_back(r.read_bit() ? '1' : '0');
    CHECK(read == a + c);
  }
}
