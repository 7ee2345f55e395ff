#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bloch/config.hpp"
#include "bloch/experiment.hpp"
#include "bloch/report.hpp"

using namespace bloch;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

ExperimentConfig config(const char* text) { return parse_experiment(Json::parse(text)); }

std::string csv_of(const ExperimentOutcome& o) {
  std::ostringstream s;
  write_csv(s, o.rows);
  return s.str();
}

}  // namespace

TEST_CASE("complex numbers in configs") {
  CHECK(parse_complex(Json::parse("0.5")) == Complex{0.5, 0.0});
  CHECK(parse_complex(Json::parse("[0.1, -0.2]")) == Complex{0.1, -0.2});
  CHECK(parse_complex(Json::parse(R"({"im": 2})")) == Complex{0.0, 2.0});
  CHECK_THROWS_AS(parse_complex(Json::parse("[1, 2, 3]")), ConfigError);
  CHECK_THROWS_AS(parse_complex(Json::parse("\"x\"")), ConfigError);
}

TEST_CASE("function descriptors") {
  const Complex z{0.3, -0.4};
  CHECK(std::abs(parse_function(Json::parse(R"({"variant":"monomial","n":3})")).value(z) -
                 z * z * z) < 1e-15);
  const auto sum = parse_function(Json::parse(R"({"variant":"sum","terms":[
      {"variant":"constant","c":1},
      {"variant":"scaled","c":[0,2],"inner":{"variant":"monomial","n":1}}]})"));
  CHECK(std::abs(sum.value(z) - (1.0 + Complex{0.0, 2.0} * z)) < 1e-15);
  const auto b = parse_function(Json::parse(R"({"variant":"blaschke","zeros":[0.5,[0,0.5]]})"));
  CHECK(std::abs(b.value(0.5)) < 1e-15);
  CHECK(std::abs(std::abs(b.value(std::polar(1.0, 0.7))) - 1.0) < 1e-12);
  CHECK_THROWS_AS(parse_function(Json::parse(R"({"variant":"monomial","n":-1})")), ConfigError);
  CHECK_THROWS_AS(parse_function(Json::parse(R"({"variant":"nope"})")), ConfigError);
  CHECK_THROWS_AS(parse_function(Json::parse(R"({"n":1})")), ConfigError);
}

TEST_CASE("quadrature blocks") {
  const QuadratureSpec q = parse_quad(Json::parse(R"({"J":10,"tol":1e-5,"M":64})"));
  CHECK(q.boundary_depth == 10);
  CHECK(q.tolerance == 1e-5);
  CHECK(q.circle_points == 64);
  CHECK(q.angular_base == QuadratureSpec{}.angular_base);
  CHECK_THROWS_AS(parse_quad(Json::parse(R"({"depth":10})")), ConfigError);
  CHECK_THROWS_AS(parse_quad(Json::parse(R"({"J":0})")), ConfigError);
}

TEST_CASE("region descriptors") {
  CHECK(parse_region(Json::parse("\"disk\"")).contains({0.9, 0.0}));
  CHECK_FALSE(parse_region(Json::parse("\"empty\"")).contains(0.0));
  const Region r = parse_region(Json::parse(R"({"intersection":[
      {"euclidean_disk":{"center":0,"radius":0.5}},
      {"complement":{"hyperbolic_disk":{"center":0,"rho":0.2}}}]})"));
  CHECK(r.contains({0.3, 0.0}));
  CHECK_FALSE(r.contains({0.1, 0.0}));
  CHECK_FALSE(r.contains({0.6, 0.0}));
  const Region t = parse_region(Json::parse(R"({"tent":{"theta":0,"alpha":4}})"));
  CHECK(t.contains({0.9, 0.0}));
  CHECK_FALSE(t.contains({-0.9, 0.0}));
  const Region ls = parse_region(
      Json::parse(R"({"levelset":{"fn":{"variant":"monomial","n":1},"eps":0.5}})"));
  CHECK(ls.contains({0.5, 0.0}));
  CHECK_FALSE(ls.contains({0.9, 0.0}));
  CHECK_THROWS_AS(parse_region(Json::parse(R"({"tent":{"theta":0,"alpha":1}})")), ConfigError);
  CHECK_THROWS_AS(parse_region(Json::parse(R"({"blob":{}})")), ConfigError);
}

TEST_CASE("experiment files") {
  const ExperimentConfig c = config(R"({"id":"cx","op":"counterexample",
      "function":{"variant":"blaschke_geometric","K":12},
      "params":{"m_max":8},"quad":{"J":12},"out":{"csv":"a/b.csv","svg":"c.svg"}})");
  CHECK(c.id == "cx");
  CHECK(c.op == "counterexample");
  CHECK(c.number("m_max", 0) == 8.0);
  CHECK(c.number("eps", 0.25) == 0.25);
  CHECK(c.quad.boundary_depth == 12);
  CHECK(c.csv_path == "a/b.csv");
  CHECK(c.svg_path == "c.svg");
  CHECK_THROWS_AS(load_experiment("/nonexistent/cfg.json"), ConfigError);
  CHECK_THROWS_AS(config(R"({"op":"lemma1","params":{"t":"one"}})").number("t", 0), ConfigError);
}

TEST_CASE("csv layout") {
  CHECK(csv_columns().size() == 12);
  CHECK(csv_columns().front() == "experiment_id");
  CHECK(csv_columns().back() == "spec_fingerprint");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CsvRow r;
  r.experiment_id = "x";
  r.value = 1.5;
  std::ostringstream s;
  write_csv(s, {r});
  CHECK_THAT(s.str(), ContainsSubstring("\nx,,,,,,,,1.5,,,\n"));
}

TEST_CASE("run: constant function has zero Bloch seminorm") {
  const auto out = run_experiment(
      config(R"({"id":"c","op":"bloch-norm","function":{"variant":"constant","c":2.5}})"));
  REQUIRE(out.rows.size() == 1);
  CHECK(out.rows[0].value == 0.0);
  CHECK(exit_code_for(out.flags) == 0);
}

TEST_CASE("run: the whole disk has infinite hyperbolic area") {
  const auto out = run_experiment(config(R"({"op":"hyperbolic-area","region":"disk"})"));
  CHECK((out.flags & kFlagDivergent) != 0u);
  CHECK(out.rows.at(0).flags.find("DIVERGENT") != std::string::npos);
  CHECK(exit_code_for(out.flags) == 2);
  const auto ok = run_experiment(config(
      R"({"op":"hyperbolic-area","region":{"euclidean_disk":{"center":0,"radius":0.7071067811865476}}})"));
  CHECK_THAT(ok.rows.at(0).value, WithinAbs(1.0, 1e-3));
  CHECK(exit_code_for(ok.flags) == 0);
}

TEST_CASE("run: counterexample profile gives monotone rows") {
  const auto out = run_experiment(config(R"({"op":"counterexample",
      "function":{"variant":"blaschke_geometric","K":12},"params":{"m_max":8}})"));
  REQUIRE(out.rows.size() == 7);
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    CHECK(out.rows[i].value > out.rows[i - 1].value);
    CHECK(out.rows[i].zeta == out.rows[i - 1].zeta + 1.0);
  }
  CHECK(exit_code_for(out.flags) == 0);
}

TEST_CASE("run: parameter errors are config errors") {
  CHECK_THROWS_AS(run_experiment(config(R"({"op":"frobnicate"})")), ConfigError);
  CHECK_THROWS_AS(run_experiment(config(R"({"op":"hardy-norm"})")), ConfigError);
  CHECK_THROWS_AS(run_experiment(config(R"({"op":"lemma2","params":{"s":-3}})")), ConfigError);
  CHECK_THROWS_AS(run_experiment(config(R"({"op":"tent-volume",
      "function":{"variant":"monomial","n":1},"params":{"eps":-1}})")),
                  ConfigError);
  CHECK_THROWS_AS(run_experiment(config(R"({"op":"split",
      "function":{"variant":"monomial","n":1},"params":{"eps":0.2,"p":0.5,"beta":3}})")),
                  ConfigError);
}

TEST_CASE("run: cheap ops") {
  const auto l3 = run_experiment(config(R"({"op":"lemma3"})"));
  REQUIRE(l3.rows.size() == 3);
  CHECK_THAT(l3.rows[2].value, WithinAbs(1.0, 1e-9));

  const auto h = run_experiment(config(R"({"op":"hardy-norm",
      "function":{"variant":"monomial","n":5},"params":{"p":1}})"));
  CHECK_THAT(h.rows.at(0).value, WithinAbs(1.0, 1e-6));
  CHECK(h.rows.at(0).p == 1.0);

  const auto nh = run_experiment(config(R"({"op":"hardy-norm",
      "function":{"variant":"power_of_one_minus_z","gamma":1},"params":{"p":2}})"));
  CHECK((nh.flags & kFlagNoPlateau) != 0u);
  CHECK(exit_code_for(nh.flags) == 2);
}

TEST_CASE("run: level-set writes an svg") {
  const auto path = std::filesystem::temp_directory_path() / "bloch_test_levelset.svg";
  std::filesystem::remove(path);
  ExperimentConfig c = config(R"({"op":"level-set","function":{"variant":"monomial","n":1},
      "params":{"eps":0.5,"size":64,"tents":[0]}})");
  c.svg_path = path.string();
  const auto out = run_experiment(c);
  // {(1 - |z|^2) >= 1/2} is |z| <= 1/sqrt 2, normalised area 1/2
  CHECK_THAT(out.rows.at(0).value, WithinAbs(0.5, 1e-6));
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK_THAT(text.str(), ContainsSubstring("<svg"));
  CHECK_THAT(text.str(), ContainsSubstring("<polyline"));
  CHECK_THAT(text.str(), ContainsSubstring("<rect"));
  c.svg_path.clear();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("run: same config, same bytes") {
  const char* text = R"({"id":"det","op":"tent-volume",
      "function":{"variant":"blaschke_geometric","K":4},
      "params":{"eps":0.1,"zeta":[0,1,2]}})";
  const std::string a = csv_of(run_experiment(config(text)));
  const std::string b = csv_of(run_experiment(config(text)));
  CHECK(a == b);
  CHECK_THAT(a, ContainsSubstring("J14-"));
}
