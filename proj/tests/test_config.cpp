/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <sstream>

#include "covertgeom/config.hpp"
#include "covertgeom/error.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace covertgeom;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_experiment_config(text);
  } catch (const Error& e) {
    return e.field();
  }
  return "";
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("defaults parse to a budget run") {
  auto c = parse_experiment_config("{}");
  CHECK(c.command == Command::Budget);
  CHECK(c.params.n == 10000);
  auto out = run_experiment(c);
  CHECK(out.csv.empty());
  auto j = nlohmann::json::parse(out.json);
  CHECK(j.contains("P_a"));
  CHECK(j.contains("phi"));
}

TEST_CASE("config errors name the offending field") {
  CHECK(field_of(R"({"bogus": 1})") == "bogus");
  CHECK(field_of(R"({"n": "many"})") == "n");
  CHECK(field_of(R"({"n": 2.5})") == "n");
  CHECK(field_of(R"({"epsilon": 0.7})") == "epsilon");
  CHECK(field_of(R"({"gamma": 1})") == "gamma");
  CHECK(field_of(R"({"regime": "weird"})") == "regime");
  CHECK(field_of(R"({"command": "simulate", "placements": 10})") == "placements");
  CHECK(field_of(R"({"command": "fit", "x": [1, 2], "y": [1, 2]})") == "x");
  CHECK(field_of(R"({"command": "detect", "sigma0": 1, "sigma1": 2})") == "t");
  CHECK(field_of(R"({"regime": "multi", "gamma": 2})") == "gamma");
  CHECK(field_of(R"({"format": "xml"})") == "format");
  CHECK(field_of(R"({"strategy": "loud"})") == "strategy");
  CHECK(field_of(R"({"optimal": 1})") == "optimal");
  CHECK_THROWS_AS(parse_experiment_config("{not json"), Error);
  CHECK_THROWS_AS(parse_experiment_config("[1, 2]"), Error);
}

TEST_CASE("seeds accept integers and decimal strings") {
  CHECK(parse_experiment_config(R"({"seed": 42})").seed == 42);
  CHECK(parse_experiment_config(R"({"seed": "18446744073709551615"})").seed == 18446744073709551615ULL);
  CHECK(field_of(R"({"seed": -3})") == "seed");
  CHECK(field_of(R"({"seed": "abc"})") == "seed");
}

TEST_CASE("detect reports the closed-form optimal error") {
  auto c = parse_experiment_config(R"({"command": "detect", "n": 2, "sigma0": 1, "sigma1": 2, "optimal": true})");
  auto j = nlohmann::json::parse(run_experiment(c).json);
  CHECK(j["p_e"].get<double>() == doctest::Approx(0.375));
}

TEST_CASE("fit command") {
  auto c = parse_experiment_config(R"({"command": "fit", "x": [1, 4, 9, 16], "y": [7, 14, 21, 28]})");
  auto j = nlohmann::json::parse(run_experiment(c).json);
  CHECK(j["slope"].get<double>() == doctest::Approx(0.5));
  CHECK(j["r_squared"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("tabular commands share one header") {
  const char* cfgs[] = {
      R"({"command": "simulate", "placements": 1000, "seed": 3})",
      R"({"command": "converse", "placements": 20, "n_grid": [1000, 10000]})",
      R"({"command": "sweep", "axis": "n", "grid": [1000, 10000, 100000]})",
      R"({"command": "diagnose", "placements": 1000, "n_w": 5})",
  };
  for (const char* text : cfgs) {
    CAPTURE(text);
    auto out = run_experiment(parse_experiment_config(text));
    auto ls = lines(out.csv);
    REQUIRE(ls.size() >= 2);
    CHECK(ls[0] == kCsvHeader);
    for (std::size_t i = 1; i < ls.size(); ++i)
      CHECK(std::count(ls[i].begin(), ls[i].end(), ',') == std::count(ls[0].begin(), ls[0].end(), ','));
    CHECK_NOTHROW(nlohmann::json::parse(out.json));
  }
}

TEST_CASE("output bytes do not depend on worker count") {
  std::string base = R"({"command": "simulate", "regime": "multi", "m": 500, "n_w": 5, "placements": 1000,
                        "inner_trials": 1000, "power_scale": 20, "seed": 11, "threads": )";
  auto one = run_experiment(parse_experiment_config(base + "1}"));
  auto four = run_experiment(parse_experiment_config(base + "4}"));
  CHECK(one.csv == four.csv);
  CHECK(one.json == four.json);
  std::string diag = R"({"command": "diagnose", "placements": 2000, "n_w": 3, "seed": 2, "threads": )";
  CHECK(run_experiment(parse_experiment_config(diag + "1}")).csv ==
        run_experiment(parse_experiment_config(diag + "3}")).csv);
}

TEST_CASE("simulate with explicit zero power") {
  auto out = run_experiment(parse_experiment_config(R"({"command": "simulate", "placements": 1000, "p_a": 0})"));
  auto j = nlohmann::json::parse(out.json);
  CHECK(j["p_e"]["mean"].get<double>() == 0.5);
  CHECK(j["meets_target"].get<bool>());
}
