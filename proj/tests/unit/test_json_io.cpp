#include <doctest.h>

#include "eisarch/json_io.hpp"

using namespace eisarch;

TEST_SUITE("json_io") {
  TEST_CASE("float formatting") {
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(-3.0) == "-3.0");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1e-20) == "9.9999999999999995e-21");
    CHECK(std::stod(format_double(2.0 / 3.0)) == 2.0 / 3.0);
  }

  TEST_CASE("deterministic rendering keeps insertion order") {
    Json j;
    j["zeta"] = 1.0;
    j["alpha"] = complex_json({1.0, -0.5});
    j["n"] = 3;
    j["flags"] = Json::array({"a", "b"});
    const std::string a = dump_json(j), b = dump_json(Json::parse(a));
    CHECK(a == b);
    CHECK(a.find("\"zeta\"") < a.find("\"alpha\""));
    CHECK(a.find("[1.0, -0.5]") != std::string::npos);
  }

  TEST_CASE("csv rendering") {
    const std::string s = render_csv({"x", "y"}, {{"1.0", "2.0"}, {"3.0", ""}});
    CHECK(s == "x,y\n1.0,2.0\n3.0,\n");
  }
}
