#include <doctest.h>

#include <stdexcept>

#include "hartogs/errors.hpp"
#include "hartogs/rational.hpp"

using hartogs::Rational;

TEST_CASE("rational normalizes sign and gcd") {
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(4, -6).den() == 3);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(0, 5).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(4, 3) * Rational(3, 8) == Rational(1, 2));
  CHECK(Rational(4, 3) / Rational(2) == Rational(2, 3));
  CHECK(Rational(-1, 3) < Rational(-1, 4));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational floor and ceil round toward the right infinities") {
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-4).floor() == -4);
  // 1 - 6/(4/3) = -7/2
  CHECK((Rational(1) - Rational(6) / Rational(4, 3)).floor() == -4);
}

TEST_CASE("rational parse") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("+2") == Rational(2));
  CHECK(Rational::parse("-4/3") == Rational(-4, 3));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("1.25") == Rational(5, 4));
  CHECK(Rational::parse("-0.75") == Rational(-3, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse(""), hartogs::PreconditionError);
  CHECK_THROWS_AS(Rational::parse("abc"), hartogs::PreconditionError);
  CHECK_THROWS_AS(Rational::parse("1/0"), hartogs::PreconditionError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), hartogs::PreconditionError);
  CHECK_THROWS_AS(Rational::parse("2/"), hartogs::PreconditionError);
}

TEST_CASE("rational str round trips through parse") {
  for (const Rational r : {Rational(4, 3), Rational(-6, 5), Rational(0), Rational(12)}) {
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK(Rational(4, 3).str() == "4/3");
  CHECK(Rational(8, 2).str() == "4");
}

TEST_CASE("rational overflow is reported, not wrapped") {
  const Rational big(INT64_MAX / 2 + 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
}
