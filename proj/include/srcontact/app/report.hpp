#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace srcontact {

inline constexpr const char* kReportSchema = "srcontact.report/1";

namespace report_detail {

inline void write_string(const std::string& s, std::string& out) {
  // nlohmann's dump() of a lone string gives correct JSON escaping.
  out += nlohmann::ordered_json(s).dump();
}

inline void write_number(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void write(const nlohmann::ordered_json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(k, out);
        out += ": ";
        write(v, indent + 2, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(v, indent + 2, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      write_number(j.get<double>(), out);
      return;
    case nlohmann::ordered_json::value_t::string:
      write_string(j.get<std::string>(), out);
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace report_detail

/// Pretty-printed JSON with every floating-point number written with 17
/// significant digits, so doubles round-trip exactly. Non-finite numbers
/// become null.
inline std::string dump_report(const nlohmann::ordered_json& j) {
  std::string out;
  report_detail::write(j, 0, out);
  out += '\n';
  return out;
}

}  // namespace srcontact
