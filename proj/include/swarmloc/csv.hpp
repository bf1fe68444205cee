#pragma once

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace swarmloc::csv {

// Six significant digits; non-finite values as "nan", "inf", "-inf".
inline std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Writes comma-joined fields followed by a single LF.
inline void row(std::ostream& out, std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (std::string_view f : fields) {
        if (!first) out << ',';
        out << f;
        first = false;
    }
    out << '\n';
}

}  // namespace swarmloc::csv
