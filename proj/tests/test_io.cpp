#include <doctest.h>

#include <json.hpp>

#include "anomint/errors.hpp"
#include "anomint/io.hpp"

using namespace anomint;
using nlohmann::json;

TEST_CASE("charge files in nested and flat layouts") {
  const auto nested = parse_charge_file(json::parse(R"({"n": 2, "alpha": [["0", "3/2"], ["-3/2", 0]]})"));
  REQUIRE(nested.exact.has_value());
  CHECK((*nested.exact)(0, 1) == Rational(3, 2));
  CHECK(nested.numeric(1, 0) == -1.5);

  const auto flat = parse_charge_file(json::parse(R"({"n": 2, "alpha": [0, 0.5, -0.5, 0]})"));
  CHECK_FALSE(flat.exact.has_value());
  CHECK_THROWS_AS(flat.require_exact(), InvalidArgument);
  CHECK(flat.numeric(0, 1) == 0.5);
}

TEST_CASE("charge file validation") {
  CHECK_THROWS_AS(parse_charge_file(json::parse(R"({"n": 3, "alpha": [0,0,0,0,0,0,0,0,0]})")),
                  OddDimension);
  CHECK_THROWS_AS(parse_charge_file(json::parse(R"({"n": 2, "alpha": [0, 1, 1, 0]})")),
                  NotAntisymmetric);
  CHECK_THROWS_AS(parse_charge_file(json::parse(R"({"n": 2, "alpha": [0, 1, -1]})")), ParseError);
  CHECK_THROWS_AS(parse_charge_file(json::parse(R"({"alpha": [0]})")), ParseError);
  CHECK_THROWS_AS(parse_charge_file(json::parse(R"({"n": 2, "alpha": [0, "x", "-1", 0]})")),
                  ParseError);
  CHECK_THROWS_AS(load_charge_file("/nonexistent/charges.json"), ParseError);
}

TEST_CASE("rational approximation") {
  CHECK(best_rational_approximation(0.5, 10) == Rational(1, 2));
  CHECK(best_rational_approximation(3.14159265358979, 10) == Rational(22, 7));
  CHECK(best_rational_approximation(3.14159265358979, 200) == Rational(355, 113));
  CHECK(best_rational_approximation(-1.4142135623730951, 100) == Rational(-140, 99));
  CHECK(best_rational_approximation(2.0, 1) == Rational(2));
  CHECK_THROWS_AS(best_rational_approximation(1.0, 0), InvalidArgument);
}

TEST_CASE("rational lists and strings") {
  const auto list = parse_rational_list("1, 2,3/2");
  CHECK(list == std::vector<Rational>{Rational(1), Rational(2), Rational(3, 2)});
  CHECK_THROWS_AS(parse_rational_list("1,,2"), ParseError);
  CHECK(rational_string(Rational(3)) == "3/1");
  CHECK(rational_string(Rational(-1, 2)) == "-1/2");
}

TEST_CASE("spectrum renderings") {
  const auto q = mode_quanta({Rational(1), Rational(2)}, Normalization::kOracle);
  const auto table = enumerate_levels(q, Rational(7));
  CHECK(spectrum_tsv(table) == "E\tdegeneracy\ttuples\n3/1\t1\t(0,0)\n5/1\t1\t(1,0)\n7/1\t2\t(0,1);(2,0)\n");
  CHECK(spectrum_csv(table) == "E,E_exact,degeneracy\n3,3/1,1\n5,5/1,1\n7,7/1,2\n");
  const json j = to_json(table, q);
  CHECK(j["levels"].size() == 3);
  CHECK(j["levels"][2]["degeneracy"] == 2);
}
