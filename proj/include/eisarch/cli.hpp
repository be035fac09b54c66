#pragma once

#include <iosfwd>
#include <string>

#include "eisarch/json_io.hpp"

namespace eisarch::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNotConverged = 3 };

struct RunConfig {
  std::string command;  // omega | whittaker | green | kappa | verify
  Json params = Json::object();
  std::string output;   // empty: stdout
  std::string format = "json";
};

// Validates a whole config document {"command", "params", "output", "format"}.
RunConfig parse_config(const Json& doc);

// Runs one command; numerical and validation errors map to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace eisarch::cli
