#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "simplexproj/bench.hpp"
#include "simplexproj/core.hpp"
#include "text.hpp"

namespace simplexproj::bench {
namespace {

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> list_items(const std::string& value) {
  std::string v = value;
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  std::vector<std::string> items;
  for (auto& item : detail::split(v, ',')) {
    if (!item.empty()) items.push_back(unquote(item));
  }
  return items;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", lineno);
  fields.push_back(cur);
  return fields;
}

constexpr std::string_view kHeader = "algorithm,n,dist,b,k,trial,time_ns,reduced_size,tau";

}  // namespace

void BenchConfig::validate() const {
  if (algorithms.empty()) throw InvalidInstance("config needs at least one algorithm");
  if (n == 0) throw InvalidInstance("config n must be at least 1");
  if (trials == 0) throw InvalidInstance("config trials must be at least 1");
  if (workers.empty()) throw InvalidInstance("config needs at least one worker count");
  for (auto k : workers) {
    if (k == 0) throw InvalidInstance("worker counts must be at least 1");
  }
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInstance("config b must be positive");
}

BenchConfig parse_config(std::istream& in) {
  BenchConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() == '[') continue;  // blank or [section]
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    const std::string key = detail::trim(std::string_view(t).substr(0, eq));
    const std::string value = detail::trim(std::string_view(t).substr(eq + 1));

    if (key == "algorithm" || key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& name : list_items(value)) {
        const auto alg = parse_algorithm(name);
        if (!alg) throw ParseError("unknown algorithm '" + name + "'", lineno);
        cfg.algorithms.push_back(*alg);
      }
    } else if (key == "n") {
      cfg.n = static_cast<std::size_t>(detail::parse_double(value, lineno));
    } else if (key == "dist") {
      try {
        cfg.dist = Distribution::parse(unquote(value));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (key == "b") {
      cfg.b = detail::parse_double(value, lineno);
    } else if (key == "k" || key == "workers") {
      cfg.workers.clear();
      for (const auto& item : list_items(value)) cfg.workers.push_back(detail::parse_unsigned(item, lineno));
    } else if (key == "trials") {
      cfg.trials = detail::parse_unsigned(value, lineno);
    } else if (key == "seed") {
      cfg.seed = detail::parse_unsigned(value, lineno);
    } else if (key == "out") {
      cfg.out = unquote(value);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  cfg.validate();
  return cfg;
}

BenchConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_config(in);
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<BenchRecord> records;
  const std::string dist = cfg.dist.label();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed = cfg.seed + trial;
    const ProjectionInstance inst = generate_instance(cfg.dist, cfg.n, cfg.b, seed);
    const double tau_ref = reference_project(inst).tau;
    for (Algorithm alg : cfg.algorithms) {
      for (std::size_t k : cfg.workers) {
        const auto start = std::chrono::steady_clock::now();
        ProjectionResult res = solve(alg, inst, k, seed);
        const auto stop = std::chrono::steady_clock::now();

        auto fail = [&](const std::string& why) {
          std::ostringstream msg;
          msg << "solver " << to_string(alg) << " failed (seed " << seed << ", k " << k << "): " << why;
          throw BenchError(msg.str());
        };
        const std::string kkt = explain_kkt(inst, res.projection);
        if (!kkt.empty()) fail(kkt);
        if (std::fabs(res.projection.tau - tau_ref) > kDefaultTolerance * std::max(1.0, std::fabs(tau_ref))) {
          fail("tau " + detail::format_double(res.projection.tau) + " differs from reference " +
               detail::format_double(tau_ref));
        }

        BenchRecord r;
        r.algorithm = std::string(to_string(alg));
        r.n = cfg.n;
        r.dist = dist;
        r.b = cfg.b;
        r.k = k;
        r.trial = trial;
        r.time_ns = std::max<std::int64_t>(
            1, std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        r.reduced_size = res.stats.reduced_size;
        r.tau = res.projection.tau;
        records.push_back(std::move(r));
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.algorithm, a.k, a.trial) < std::tie(b.algorithm, b.k, b.trial);
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << csv_field(r.algorithm) << ',' << r.n << ',' << csv_field(r.dist) << ','
        << detail::format_double(r.b) << ',' << r.k << ',' << r.trial << ',' << r.time_ns << ','
        << r.reduced_size << ',' << detail::format_double(r.tau) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("empty CSV input", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw ParseError("unexpected CSV header", 1);
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto f = csv_split(line, lineno);
    if (f.size() != 9) throw ParseError("expected 9 fields", lineno);
    BenchRecord r;
    r.algorithm = f[0];
    r.n = detail::parse_unsigned(f[1], lineno);
    r.dist = f[2];
    r.b = detail::parse_double(f[3], lineno);
    r.k = detail::parse_unsigned(f[4], lineno);
    r.trial = detail::parse_unsigned(f[5], lineno);
    r.time_ns = static_cast<std::int64_t>(detail::parse_unsigned(f[6], lineno));
    r.reduced_size = detail::parse_unsigned(f[7], lineno);
    r.tau = detail::parse_double(f[8], lineno);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace simplexproj::bench
