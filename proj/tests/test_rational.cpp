#include <stdexcept>

#include "aft/bounds.hpp"
#include "aft/rational.hpp"
#include "doctest.h"

using namespace aft;

TEST_CASE("parse_rational reads integers and fractions") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("5/2") == Rational(5, 2));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0/5") == Rational(0));
}

TEST_CASE("parse_rational canonicalizes to lowest terms") {
  // Equal values must compare equal regardless of the written form; an
  // unreduced internal representation would break that.
  CHECK(parse_rational("3/6") == parse_rational("2/4"));
  CHECK(format_rational(parse_rational("3/6")) == "1/2");
  CHECK(format_rational(parse_rational("10/4")) == "5/2");
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", " 1", "1 ", "1.5", "1/", "/2", "a", "1/-2",
                          "--1", "+1", "1/2/3", "1/0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("format_rational round-trips") {
  for (const char* text : {"0", "7", "-7", "1/2", "-1/2", "22/7"}) {
    CHECK(format_rational(parse_rational(text)) == text);
  }
}

TEST_CASE("integer predicates") {
  CHECK(is_integer(Rational(4)));
  CHECK(is_integer(Rational(-4)));
  CHECK(is_integer(Rational(6, 3)));
  CHECK_FALSE(is_integer(Rational(1, 2)));
  CHECK(to_integer(Rational(6, 3)) == 2);
  CHECK_THROWS_AS(to_integer(Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("parse_bounds overrides only the named keys") {
  const SizeBounds b = parse_bounds("oracle_strict=7,closure_paths=9");
  CHECK(b.oracle_strict == 7);
  CHECK(b.oracle_waiting == 20000);
  CHECK(b.dag_paths == 4096);
  CHECK(b.closure_paths == 9);
}

TEST_CASE("parse_bounds keeps defaults on empty input") {
  const SizeBounds b = parse_bounds("");
  CHECK(b.oracle_strict == 5000);
  CHECK(b.oracle_waiting == 20000);
  CHECK(b.dag_paths == 4096);
  CHECK(b.closure_paths == 64);
}

TEST_CASE("parse_bounds fails loud on malformed input") {
  CHECK_THROWS_AS(parse_bounds("oracle=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bounds("oracle_strict"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bounds("oracle_strict=x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bounds("oracle_strict="), std::invalid_argument);
}
