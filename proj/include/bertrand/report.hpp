// Deterministic output helpers: shortest round-trip number formatting and
// small CSV utilities. JSON serialization goes through nlohmann::json, whose
// sorted keys and shortest-repr doubles keep reports byte-stable.
#ifndef BERTRAND_REPORT_HPP
#define BERTRAND_REPORT_HPP

#include <string>
#include <vector>

namespace bertrand {

// shortest decimal representation that round-trips the double
std::string format_double(double x);

std::string csv_row(const std::vector<std::string>& cells);
std::string csv_numeric_row(const std::vector<double>& cells);

} // namespace bertrand

#endif
