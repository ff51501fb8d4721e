#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace simplexproj::bench::detail {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Throw ParseError tagged with line (0 for none).
double parse_double(std::string_view s, std::size_t line);
std::uint64_t parse_unsigned(std::string_view s, std::size_t line);
std::string format_double(double x);

}  // namespace simplexproj::bench::detail
