#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace torusspec::cli {

using ordered_json = nlohmann::ordered_json;

// All emitted numbers carry 10 significant digits, '.' decimal separator.
inline std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// JSON number rounded to the emission precision (null for non-finite).
inline ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt10(v));
}

// RFC-4180: quote fields containing separators or quotes, double the quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace torusspec::cli
