#include "eisarch/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace eisarch {

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void escape(std::ostringstream& o, const std::string& s) {
  o << Json(s).dump();
}

void emit(std::ostringstream& o, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(std::size_t(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? std::string(std::size_t(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        o << "{}";
        return;
      }
      o << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) o << "," << nl;
        first = false;
        o << pad;
        escape(o, it.key());
        o << (indent > 0 ? ": " : ":");
        emit(o, it.value(), indent, depth + 1);
      }
      o << nl << close << "}";
      return;
    }
    case Json::value_t::array: {
      // short numeric arrays stay on one line
      bool flat = j.size() <= 4;
      for (const auto& e : j) flat = flat && e.is_primitive();
      if (j.empty()) {
        o << "[]";
        return;
      }
      if (flat) {
        o << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) o << (indent > 0 ? ", " : ",");
          emit(o, j[i], indent, depth + 1);
        }
        o << "]";
        return;
      }
      o << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) o << "," << nl;
        o << pad;
        emit(o, j[i], indent, depth + 1);
      }
      o << nl << close << "]";
      return;
    }
    case Json::value_t::number_float:
      o << format_double(j.get<double>());
      return;
    case Json::value_t::string:
      escape(o, j.get<std::string>());
      return;
    default:
      o << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream o;
  emit(o, j, indent, 0);
  return o.str();
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace eisarch
