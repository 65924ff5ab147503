#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "uknap/rat.hpp"

using namespace uknap;

namespace {

// Deterministic 64-bit stream for the property loops below.
struct Splitmix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("make_rat canonicalizes") {
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(rat_to_string(make_rat(6, -4)) == "-3/2");
  CHECK(rat_to_string(make_rat(0, 7)) == "0");
  CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse and print round-trip") {
  CHECK(parse_rat("1/3") == make_rat(1, 3));
  CHECK(parse_rat("-7/21") == make_rat(-1, 3));
  CHECK(parse_rat("42") == Rat(42));
  CHECK(parse_rat("+5/10") == make_rat(1, 2));
  CHECK(rat_to_string(parse_rat("10650056950807")) == "10650056950807");
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/"), std::invalid_argument);
}

TEST_CASE("field identities hold exactly on random rationals") {
  constexpr int kIterations = 500;
  Splitmix rng{20250816};
  for (int i = 0; i < kIterations; ++i) {
    Rat a = make_rat(rng.range(-1000, 1000), rng.range(1, 999));
    Rat b = make_rat(rng.range(-1000, 1000), rng.range(1, 999));
    CHECK((a + b) - b == a);
    if (b != 0) CHECK((a * b) / b == a);
    // serialization round-trips bit-exactly
    CHECK(parse_rat(rat_to_string(a)) == a);
  }
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(rat_to_decimal(make_rat(1, 3), 5) == "0.33333");
  CHECK(rat_to_decimal(make_rat(2, 3), 5) == "0.66667");
  CHECK(rat_to_decimal(make_rat(1, 8), 2) == "0.12");   // 0.125 -> even
  CHECK(rat_to_decimal(make_rat(3, 8), 2) == "0.38");   // 0.375 -> even
  CHECK(rat_to_decimal(make_rat(1, 2), 0) == "0");
  CHECK(rat_to_decimal(make_rat(3, 2), 0) == "2");
  CHECK(rat_to_decimal(make_rat(-1, 3), 4) == "-0.3333");
  CHECK(rat_to_decimal(make_rat(-1, 1000000), 2) == "0.00");  // no "-0.00"
  CHECK(rat_to_decimal(Rat(7), 3) == "7.000");
  CHECK(rat_to_decimal(make_rat(509, 301), 10) == "1.6910299003");
}

TEST_CASE("floor_rat matches mathematical floor") {
  CHECK(floor_rat(make_rat(7, 2)) == 3);
  CHECK(floor_rat(make_rat(-7, 2)) == -4);
  CHECK(floor_rat(Rat(5)) == 5);
  CHECK(floor_rat(make_rat(1, 3)) == 0);
  // multiplicity-style use: floor(1/w)
  Rat w = make_rat(3, 10);
  CHECK(floor_rat(1 / w) == 3);
}
