#include "text.hpp"

#include <charconv>
#include <cstdio>

#include "simplexproj/bench.hpp"

namespace simplexproj::bench::detail {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::size_t line) {
  const std::string t = trim(s);
  // from_chars takes no leading '+', which LIBSVM labels often carry.
  const std::size_t skip = t.size() > 1 && t[0] == '+' && t[1] != '-' ? 1 : 0;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data() + skip, t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("not a number: '" + t + "'", line);
  }
  return x;
}

std::uint64_t parse_unsigned(std::string_view s, std::size_t line) {
  const std::string t = trim(s);
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("not a non-negative integer: '" + t + "'", line);
  }
  return x;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace simplexproj::bench::detail
