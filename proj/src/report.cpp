#include "bertrand/report.hpp"

#include <charconv>
#include <cmath>

namespace bertrand {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

std::string csv_numeric_row(const std::vector<double>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            row += ',';
        row += format_double(cells[i]);
    }
    row += '\n';
    return row;
}

} // namespace bertrand
