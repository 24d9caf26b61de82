#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "cmx/errors.hpp"
#include "cmx/experiments.hpp"
#include "json.hpp"

using namespace cmx;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::string csv(const Table& t) {
  std::ostringstream out;
  write_table(out, t, Format::csv);
  return out.str();
}

}  // namespace

TEST_CASE("parse_orders") {
  CHECK(parse_orders("5") == std::vector<int>{5});
  CHECK(parse_orders("2,4,6") == std::vector<int>{2, 4, 6});
  CHECK(parse_orders("1:4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_orders("5:20:5") == std::vector<int>{5, 10, 15, 20});
  for (const char* bad : {"", "0", "4:2", "1:5:0", "x", "1:2:3:4"}) CHECK_THROWS_AS(parse_orders(bad), UsageError);
}

TEST_CASE("rational grids") {
  CHECK(parse_rational_grid("1/10,2") == std::vector<Rational>{q("1/10"), q("2")});
  CHECK(parse_rational_grid("0:1:5") == std::vector<Rational>{q("0"), q("1/4"), q("1/2"), q("3/4"), q("1")});
  CHECK_THROWS_AS(parse_rational_grid("0:1"), UsageError);

  auto xi = theta_grid(3);
  REQUIRE(xi.size() == 3);
  // theta = pi/8, pi/4, 3 pi/8
  CHECK(xi[1] == 1);
  CHECK(abs(BigFloat(xi[0] * xi[2] - 1, 30)) < BigFloat::parse("1e-11", 30));
  for (std::size_t k = 1; k < xi.size(); ++k) CHECK(xi[k - 1] < xi[k]);
}

TEST_CASE("model JSON") {
  auto spectral = parse_model_json(R"({"type":"spectral","levels":[{"energy":"1","weight":"1"},{"energy":"2","weight":"1/4"}]})");
  auto catalogued = catalog("diagonal-xi", {{"xi", "1/4"}});
  CHECK(std::get<SpectralModel<Rational>>(spectral).levels.size() == 2);
  CHECK(csv(cmx_table(spectral, std::vector<int>{2}, {})) == csv(cmx_table(catalogued, std::vector<int>{2}, {})));

  auto matrix = parse_model_json(R"({"type":"matrix","h":[["0","1/10"],["1/10","1"]],"reference":["1","0"]})");
  CHECK(std::holds_alternative<MatrixModel>(matrix));

  auto osc = parse_model_json(R"({"type":"oscillator","potential":[[2,"1"]],"a":"1/2","reference_poly":[[0,"1"]]})");
  auto mu = moments<Rational>(osc, 4);
  for (const auto& m : mu.mu) CHECK(m == 1);

  auto floating = parse_model_json(R"({"type":"oscillator","potential":[[2,"1"]],"a":"1/2","float_coefficients":[[0,"1.0"]]})");
  CHECK_FALSE(std::get<OscillatorModel>(floating).exact());

  for (const char* bad : {"{", R"({"type":"nope"})", R"({"type":"spectral"})",
                          R"({"type":"matrix","h":[["0","1"]],"reference":["1"]})",
                          R"({"type":"oscillator","potential":[[-1,"1"]],"a":"1","reference_poly":[[0,"1"]]})"})
    CHECK_THROWS_AS(parse_model_json(bad), UsageError);
}

TEST_CASE("load_model") {
  CHECK(std::holds_alternative<MatrixModel>(load_model("two-level-V", {{"V", "1"}})));
  CHECK_THROWS_AS(load_model("no-such-model"), UsageError);
}

TEST_CASE("table output") {
  Table t{"demo", {"a", "b"}, {{"1", "x,y"}, {"2", "say \"hi\""}}, {"a note"}};
  CHECK(csv(t) == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");

  std::ostringstream out;
  write_table(out, t, Format::json);
  auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["name"] == "demo");
  CHECK(doc["rows"][1]["b"] == "say \"hi\"");
  CHECK(doc["notes"][0] == "a note");
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("scan rows") {
  auto t = run_scan("diagonal-xi", "xi", std::vector<Rational>{q("1/20"), q("1"), q("2")}, std::vector<int>{2}, {}, {});
  REQUIRE(t.rows.size() == 3);
  const auto column = [&](const char* name) {
    for (std::size_t k = 0; k < t.columns.size(); ++k)
      if (t.columns[k] == name) return k;
    FAIL("missing column ", name);
    return std::size_t{0};
  };
  CHECK(t.rows[0][column("class")] == "AllRealPositive");
  CHECK(t.rows[0][column("A0")] == "1.000124984");
  CHECK(t.rows[1][column("class")] == "PurelyImaginary");
  CHECK(t.rows[1][column("predicted_target")] == "divergent");
  CHECK(t.rows[2][column("A0")] == "1.888888889");
  CHECK(t.rows[2][column("predicted_target")] == "excited");
  for (const auto& row : t.rows) CHECK(row[column("status")] == "ok");
}

TEST_CASE("reproduce targets") {
  auto targets = reproduce_targets();
  CHECK(targets.size() == 7);
  auto tables = reproduce("table1", {});
  REQUIRE(tables.size() == 1);
  REQUIRE(tables[0].rows.size() == 6);
  CHECK(tables[0].rows[0][1] == "1.015384615");
  CHECK(tables[0].rows[0][2] == "1.984615385");
  CHECK_THROWS_AS(reproduce("table9", {}), UsageError);
}
