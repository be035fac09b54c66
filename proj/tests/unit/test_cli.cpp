#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "eisarch/cli.hpp"
#include "eisarch/error.hpp"

using namespace eisarch;
using namespace eisarch::cli;

namespace {

struct Ran {
  int code;
  std::string out, err;
};

Ran run_json(const std::string& text) {
  std::ostringstream out, err;
  RunConfig cfg;
  try {
    cfg = parse_config(Json::parse(text));
  } catch (const Error& e) {
    return {kConfigError, "", e.what()};
  }
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("omega single point") {
    const Ran r = run_json(R"({"command": "omega", "params": {"r": 1, "g": 3, "alpha": 1, "beta": 2}})");
    CHECK(r.code == kOk);
    CHECK(Json::parse(r.out)["value"] == Json::array({1.0, 0.0}));
    CHECK(r.out.find("\"value\": [1.0, 0.0]") != std::string::npos);
  }

  TEST_CASE("omega grid is byte-identical across runs") {
    const std::string cfg =
        R"({"command": "omega", "params": {"g": [[1.0, 0.2], [0.2, 0.8]], "alpha": [1.9, 2.3], "beta": [{"re": 1.8, "im": 0.5}, 2.4]}})";
    const Ran a = run_json(cfg), b = run_json(cfg);
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["grid"].size() == 4);
  }

  TEST_CASE("schema errors name the offending path") {
    Ran r = run_json(R"({"command": "omega", "params": {"g": 3, "alpha": 1, "bta": 2}})");
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("params.bta") != std::string::npos);
    r = run_json(R"({"command": "omega", "params": {"g": [[1, 0], [0]], "alpha": 1, "beta": 2}})");
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("params.g[1]") != std::string::npos);
    r = run_json(R"({"command": "whittaker", "params": {"T": 1}})");
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("params.m") != std::string::npos);
    r = run_json(R"({"command": "nope"})");
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("config.command") != std::string::npos);
    r = run_json(R"({"command": "omega", "format": "xml", "params": {}})");
    CHECK(r.code == kConfigError);
    r = run_json(R"({"command": "kappa", "params": {"mode": "general", "m": 4, "T": [["1/2", "x"], ["1", "1"]], "datum": {"value": 1, "deriv": 0}}})");
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("params.T[0][1]") != std::string::npos);
  }

  TEST_CASE("convergence failures exit 3") {
    const Ran r = run_json(
        R"({"command": "omega", "params": {"g": [[1.0, 0.0], [0.0, 2.0]], "alpha": 2.3, "beta": 1.9, "quad": {"nodes_diag": 7, "nodes_offdiag": 7, "tolerance": 1e-12}}})");
    CHECK(r.code == kNotConverged);
    const Ran bad = run_json(
        R"({"command": "omega", "params": {"g": 1, "alpha": 2.3, "beta": 1.9, "quad": {"tolerance": 1e-300}}})");
    CHECK(bad.code == kConfigError);
  }

  TEST_CASE("whittaker rows carry derivative, asymptote and oracle at s0") {
    const Ran r = run_json(R"({"command": "whittaker", "params": {"m": 4, "T": 1, "lambda": [1, 2]}})");
    REQUIRE(r.code == kOk);
    const Json j = Json::parse(r.out);
    REQUIRE(j["rows"].size() == 2);
    for (const Json& row : j["rows"]) {
      CHECK(row["deriv"].is_array());
      CHECK(row["asymptote"].is_array());
      CHECK(row["oracle"].is_array());
    }
  }

  TEST_CASE("green csv columns") {
    const std::string path = "cli_green_test.csv";
    const Ran r = run_json(
        R"({"command": "green", "format": "csv", "output": "cli_green_test.csv", "params": {"chart": "u11", "v": [1, 0.5], "grid": {"n": 5}}})");
    REQUIRE(r.code == kOk);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "re(w),im(w),value,residual");
    std::remove(path.c_str());
  }

  TEST_CASE("kappa general mode reports the reduction") {
    const Ran r = run_json(
        R"({"command": "kappa", "params": {"mode": "general", "m": 4, "T": [[1, 1], [1, 1]], "datum": {"value": 1, "deriv": 0.3}}})");
    REQUIRE(r.code == kOk);
    const Json j = Json::parse(r.out);
    CHECK(j["reduction"]["gamma_inv"] == Json::parse(R"([["1", "0"], ["-1", "1"]])"));
    CHECK(j["reduction"]["discrepancy"] == true);
  }

  TEST_CASE("verify a single criterion") {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.command = "verify";
    cfg.params = Json::parse(R"({"suite": "kappa", "criteria": [13]})");
    CHECK(run(cfg, out, err) == kOk);
    CHECK(out.str().rfind("PASS", 0) == 0);
  }

  TEST_CASE("inline flags") {
    const char* argv[] = {"eisarch", "verify", "--suite", "bogus"};
    CHECK(main_entry(4, const_cast<char**>(argv)) == kConfigError);
  }
}
