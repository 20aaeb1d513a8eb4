#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "arm/errors.hpp"

namespace arm {

/// Shortest decimal text that reads back to exactly `v`.
inline std::string format_double(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::string_view trim(std::string_view s) noexcept
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text, const std::string& field)
{
    text = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

inline std::uint64_t parse_uint(std::string_view text, const std::string& field)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError(field, "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return v;
}

/// Comma-separated list; an empty or blank string gives an empty list.
template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, const std::string& field, Parse parse)
{
    std::vector<T> out;
    if (trim(text).empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(parse(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos),
                            field));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

inline std::vector<double> parse_doubles(std::string_view text, const std::string& field)
{
    return parse_list<double>(text, field, parse_double);
}

inline std::vector<std::uint64_t> parse_uints(std::string_view text, const std::string& field)
{
    return parse_list<std::uint64_t>(text, field, parse_uint);
}

template <class T>
std::string join(const std::vector<T>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ", ";
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(values[i]);
        }
        else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

}  // namespace arm
