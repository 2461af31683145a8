#include "doctest.h"
#include "helpers.hpp"
#include "hpfire/scalar.hpp"

using namespace hpfire;
using hpfire::testing::R;

TEST_SUITE("scalar") {
  TEST_CASE("rational parsing accepts fractions, integers and exact decimals") {
    CHECK(parse_scalar<Rational>("17/9") == R(17, 9));
    CHECK(parse_scalar<Rational>("-34/2") == R(-17));
    CHECK(parse_scalar<Rational>("238") == R(238));
    CHECK(parse_scalar<Rational>("1.85") == R(37, 20));
    CHECK(parse_scalar<Rational>("-0.125") == R(-1, 8));
    CHECK(parse_scalar<Rational>(".5") == R(1, 2));
    CHECK(parse_scalar<Rational>("+3") == R(3));
  }

  TEST_CASE("rational parsing rejects junk") {
    CHECK_THROWS_AS(parse_scalar<Rational>(""), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>("abc"), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>("1.2e3"), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>("1."), ParseError);
  }

  TEST_CASE("rational formatting is canonical") {
    CHECK(format_scalar(R(34, 18)) == "17/9");
    CHECK(format_scalar(R(-6, 3)) == "-2");
    CHECK(format_scalar(R(0)) == "0");
    const Rational big = parse_scalar<Rational>("123456789012345678901234567890/7");
    CHECK(parse_scalar<Rational>(format_scalar(big)) == big);
  }

  TEST_CASE("from_double is exact") {
    CHECK(ScalarTraits<Rational>::from_double(0.375) == R(3, 8));
    CHECK(ScalarTraits<Rational>::from_double(-1536.0) == R(-1536));
    const double x = 0.1;
    CHECK(to_double(ScalarTraits<Rational>::from_double(x)) == x);
    CHECK(ScalarTraits<Rational>::from_double(x) != R(1, 10));
  }

  TEST_CASE("double parsing and shortest round-trip formatting") {
    CHECK(parse_scalar<double>("1.2802") == doctest::Approx(1.2802));
    CHECK(parse_scalar<double>("17/9") == doctest::Approx(17.0 / 9.0));
    CHECK_THROWS_AS(parse_scalar<double>("x1"), ParseError);
    const double v = 1.8771155993823638;
    CHECK(parse_scalar<double>(format_scalar(v)) == v);
  }

  TEST_CASE("tolerant comparisons") {
    CHECK(approx_equal(1.0, 1.0 + 1e-12));
    CHECK_FALSE(approx_equal(1.0, 1.0 + 1e-6));
    CHECK(approx_equal(1e6, 1e6 + 1e-4));  // relative
    CHECK(approx_equal(R(1, 3), R(2, 6)));
    CHECK_FALSE(approx_equal(R(1, 3), R(1, 3) + R(1, 1000000000000LL)));
    CHECK(definitely_less(1.0, 1.1));
    CHECK_FALSE(definitely_less(1.0, 1.0 + 1e-12));
    CHECK(less_or_approx(1.0 + 1e-12, 1.0));
  }
}
