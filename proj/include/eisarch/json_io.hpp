#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace eisarch {

using Json = nlohmann::ordered_json;

// 17 significant digits; integral values keep a trailing ".0".
std::string format_double(double x);

// Deterministic rendering: insertion-ordered keys, fixed float format.
std::string dump_json(const Json& j, int indent = 2);

Json complex_json(std::complex<double> z);

// Comma-separated rows; the header is written first.
std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace eisarch
