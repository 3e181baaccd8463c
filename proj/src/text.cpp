#include "quadrics/text.hpp"

#include <charconv>
#include <system_error>

#include "quadrics/errors.hpp"

namespace quadrics {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ParseError("invalid number '" + std::string(text) + "' in " + std::string(what));
    }
    return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
    long long value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ParseError("invalid integer '" + std::string(text) + "' in " + std::string(what));
    }
    return value;
}

}  // namespace quadrics
