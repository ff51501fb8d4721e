#include <algorithm>
#include <fstream>
#include <sstream>

#include "simplexproj/bench.hpp"
#include "text.hpp"

namespace simplexproj::bench {

LassoData parse_libsvm(std::istream& in, std::size_t cols) {
  struct Row {
    std::vector<std::size_t> col;
    std::vector<double> val;
  };
  std::vector<Row> rows;
  std::vector<double> labels;
  std::size_t max_col = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;
    labels.push_back(detail::parse_double(tok, lineno));
    Row row;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError("expected index:value, got '" + tok + "'", lineno);
      const auto index = detail::parse_unsigned(std::string_view(tok).substr(0, colon), lineno);
      if (index == 0) throw ParseError("feature indices are 1-based", lineno);
      if (!row.col.empty() && index - 1 <= row.col.back()) {
        throw ParseError("feature indices must increase within a line", lineno);
      }
      row.col.push_back(index - 1);
      row.val.push_back(detail::parse_double(std::string_view(tok).substr(colon + 1), lineno));
      max_col = std::max<std::size_t>(max_col, index);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no samples in LIBSVM input", 0);

  LassoData data;
  data.a.cols = std::max(cols, max_col);
  for (const auto& r : rows) data.a.add_row(r.col, r.val);
  data.labels = std::move(labels);
  return data;
}

LassoData read_libsvm(const std::string& path, std::size_t cols) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_libsvm(in, cols);
}

void write_libsvm(std::ostream& out, const LassoData& data) {
  const SparseMatrix& a = data.a;
  for (std::size_t r = 0; r < a.rows; ++r) {
    out << detail::format_double(data.labels[r]);
    for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
      out << ' ' << a.col[p] + 1 << ':' << detail::format_double(a.val[p]);
    }
    out << '\n';
  }
}

void write_libsvm(const std::string& path, const LassoData& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_libsvm(out, data);
}

}  // namespace simplexproj::bench
