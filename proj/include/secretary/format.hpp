#pragma once

#include <charconv>
#include <string>

namespace secretary {

/// Locale-independent float rendering at the project-wide 12 significant
/// digits ('.' decimal separator always; CSV and tables both rely on this).
inline std::string format_significant(double value, int digits = 12) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace secretary
