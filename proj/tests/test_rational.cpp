#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bellctx/rational.hpp"

using namespace bellctx;

TEST_CASE("parsing accepts integers and fractions in canonical or raw form") {
  CHECK(parse_rational("3") == rat(3));
  CHECK(parse_rational("-3") == rat(-3));
  CHECK(parse_rational("6/8") == rat(3, 4));
  CHECK(parse_rational("-6/8") == rat(-3, 4));
  CHECK(rational_str(parse_rational("-6/8")) == "-3/4");
  CHECK(rational_str(parse_rational("4/2")) == "2");
}

TEST_CASE("parsing rejects garbage and zero denominators") {
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("2.5"), Error);
  CHECK_THROWS_AS(parse_rational("a"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/"), Error);
  CHECK_THROWS_AS(parse_rational("--2"), Error);
}

TEST_CASE("arithmetic is exact and canonical") {
  const Rational half = rat(1, 2);
  const Rational third = rat(1, 3);
  CHECK(half + third == rat(5, 6));
  CHECK(half * third == rat(1, 6));
  CHECK(half - half == 0);
  CHECK(denominator(Rational(half + half)) == 1);
  CHECK_THROWS(half / Rational(0));
}

TEST_CASE("division by zero never yields a value") {
  bool threw = false;
  try {
    Rational x = rat(1) / (rat(1) - rat(1));
    (void)x;
  } catch (const std::exception&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("nearest_rational recovers simple fractions") {
  CHECK(nearest_rational(0.5, Int(1000)) == rat(1, 2));
  CHECK(nearest_rational(1.0 / 3.0, Int(1000)) == rat(1, 3));
  CHECK(nearest_rational(-0.25, Int(1000)) == rat(-1, 4));
  CHECK(nearest_rational(2.0, Int(10)) == rat(2));
}

TEST_CASE("snap respects the tolerance") {
  Rational out;
  CHECK(snap_rational(0.5 + 1e-12, Int(1000000), 1e-9, out));
  CHECK(out == rat(1, 2));
  CHECK_FALSE(snap_rational(0.5 + 1e-4, Int(2), 1e-9, out));
  // irrational-ish value with a tiny denominator bound
  CHECK_FALSE(snap_rational(0.70710678118654752, Int(100), 1e-9, out));
}

TEST_CASE("snap of an exactly representable dyadic is exact") {
  Rational out;
  CHECK(snap_rational(0.375, Int(8), 0.0, out));
  CHECK(out == rat(3, 8));
}
