#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace gridfreq {

/// Locale-free decimal rendering with 17 significant digits (round-trip exact
/// for IEEE doubles, deterministic across runs).
inline std::string format_double(double value, int precision = 17) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, precision);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

} // namespace gridfreq
