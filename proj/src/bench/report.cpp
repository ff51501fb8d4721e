#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "simplexproj/bench.hpp"
#include "text.hpp"

namespace simplexproj::bench {
namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

bool parallel_name(const std::string& name) {
  const auto alg = parse_algorithm(name);
  return alg && is_parallel(*alg);
}

std::string counterpart_name(const std::string& name) {
  const auto alg = parse_algorithm(name);
  return alg ? std::string(to_string(serial_counterpart(*alg))) : name;
}

std::string ratio(const std::optional<double>& x) {
  if (!x) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << *x;
  return os.str();
}

}  // namespace

std::optional<Baseline> parse_baseline(std::string_view name) {
  if (name == "fastest-serial") return Baseline::fastest_serial;
  if (name == "same-algorithm-serial") return Baseline::same_algorithm_serial;
  return std::nullopt;
}

SpeedupReport speedup_report(const std::vector<BenchRecord>& records, Baseline baseline) {
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> times;
  for (const auto& r : records) times[{r.algorithm, r.k}].push_back(static_cast<double>(r.time_ns));

  std::map<std::string, double> serial_k1;
  for (const auto& [key, t] : times) {
    if (key.second == 1 && !parallel_name(key.first)) serial_k1[key.first] = median(t);
  }

  SpeedupReport report;
  std::optional<double> fastest;
  for (const auto& [name, m] : serial_k1) {
    if (!fastest || m < *fastest) {
      fastest = m;
      report.fastest_serial = name;
    }
  }
  if (baseline == Baseline::fastest_serial && !fastest) {
    throw BenchError("no serial run at k = 1 to serve as the fastest-serial baseline");
  }

  for (const auto& [key, t] : times) {
    SpeedupRow row;
    row.algorithm = key.first;
    row.k = key.second;
    row.trials = t.size();
    row.median_ns = median(t);
    if (fastest) row.absolute = *fastest / row.median_ns;
    const auto base = serial_k1.find(counterpart_name(row.algorithm));
    if (base != serial_k1.end()) {
      row.relative = base->second / row.median_ns;
    } else if (baseline == Baseline::same_algorithm_serial) {
      throw BenchError("no serial k = 1 baseline for " + row.algorithm);
    }
    if (parallel_name(row.algorithm) && row.k == 1 && row.absolute) {
      ++report.one_core_rows;
      if (*row.absolute <= 1.0) ++report.one_core_not_faster;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(std::ostream& out, const SpeedupReport& report) {
  out << "algorithm,k,trials,median_ns,absolute_speedup,relative_speedup\n";
  for (const auto& r : report.rows) {
    out << r.algorithm << ',' << r.k << ',' << r.trials << ',' << detail::format_double(r.median_ns)
        << ',' << (r.absolute ? detail::format_double(*r.absolute) : "") << ','
        << (r.relative ? detail::format_double(*r.relative) : "") << '\n';
  }
}

void write_report_table(std::ostream& out, const SpeedupReport& report) {
  std::size_t width = 9;
  for (const auto& r : report.rows) width = std::max(width, r.algorithm.size());
  out << std::left << std::setw(static_cast<int>(width)) << "algorithm" << std::right
      << std::setw(5) << "k" << std::setw(8) << "trials" << std::setw(16) << "median_ms"
      << std::setw(12) << "absolute" << std::setw(12) << "relative" << '\n';
  for (const auto& r : report.rows) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << r.median_ns / 1e6;
    out << std::left << std::setw(static_cast<int>(width)) << r.algorithm << std::right
        << std::setw(5) << r.k << std::setw(8) << r.trials << std::setw(16) << ms.str()
        << std::setw(12) << ratio(r.absolute) << std::setw(12) << ratio(r.relative) << '\n';
  }
  if (!report.fastest_serial.empty()) out << "fastest serial: " << report.fastest_serial << '\n';
  if (report.one_core_rows > 0) {
    out << "parallel at k=1 no faster than the fastest serial: " << report.one_core_not_faster << " of "
        << report.one_core_rows << '\n';
  }
}

}  // namespace simplexproj::bench
