#pragma once

#include <string>
#include <string_view>

namespace quadrics {

/// Shortest decimal representation that round-trips the exact double value.
std::string format_double(double value);

/// Parses a full string as a double; throws ParseError (with `what` as context) otherwise.
double parse_double(std::string_view text, std::string_view what);

/// Parses a full string as an integer; throws ParseError otherwise.
long long parse_integer(std::string_view text, std::string_view what);

}  // namespace quadrics
