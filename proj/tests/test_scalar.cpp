#include <doctest.h>

#include "anomint/errors.hpp"
#include "anomint/scalar.hpp"

using namespace anomint;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("rational rendering") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-4)) == "-4");
}

TEST_CASE("gaussian rational arithmetic") {
  const Scalar i = Scalar::imaginary_unit();
  CHECK(i * i == Scalar(-1));
  const Scalar a(Rational(1, 2), Rational(3));
  CHECK(a * a.conj() == Scalar(Rational(37, 4)));
  CHECK((a / a) == Scalar(1));
  CHECK((a - a).is_zero());
  CHECK_FALSE(a.is_real());
  CHECK_THROWS(a / Scalar(0));
}

TEST_CASE("scalar rendering") {
  CHECK(Scalar(Rational(3, 2)).to_string() == "3/2");
  CHECK(Scalar(Rational(0), Rational(-1, 2)).to_string() == "-1/2i");
  CHECK(Scalar::imaginary_unit().to_string() == "i");
  CHECK((-Scalar::imaginary_unit()).to_string() == "-i");
  CHECK(Scalar(Rational(1, 2), Rational(3)).to_string() == "(1/2+3i)");
  CHECK(Scalar(0).to_string() == "0");
}
