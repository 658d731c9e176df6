#pragma once

// Byte-stable text serialization of bound reports. Numbers use 12
// significant digits; JSON field names match the CSV header.

#include <string>

#include <json.hpp>

#include "matcon/montecarlo.hpp"

namespace matcon {

/// printf "%.12g"; non-finite values print as nan, inf, -inf.
std::string format_number(double x);

std::string report_csv_header();
std::string report_csv_row(const BoundReport& r);
nlohmann::ordered_json report_json(const BoundReport& r);

/// JSON number when finite, else the string produced by format_number.
nlohmann::ordered_json json_number(double x);

}  // namespace matcon
