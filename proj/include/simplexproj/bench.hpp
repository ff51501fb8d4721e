#pragma once

// Instance generation, LIBSVM I/O, the timing harness and speedup reports.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "simplexproj/lasso.hpp"
#include "simplexproj/solvers.hpp"
#include "simplexproj/types.hpp"

namespace simplexproj::bench {

/// Malformed text input. line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a solve fails verification inside the harness.
class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// uniform(l,u), normal(mu,var), sparse-uniform(rate), constant(c) or
/// duplicates(m): U[0,1] values drawn from a pool of m distinct values.
struct Distribution {
  enum class Kind { uniform, normal, sparse_uniform, constant, duplicates };

  Kind kind = Kind::uniform;
  double p1 = 0.0;
  double p2 = 1.0;

  static Distribution parse(std::string_view spec);
  std::string label() const;
};

std::vector<double> generate_vector(const Distribution& dist, std::size_t n, std::uint64_t seed);
ProjectionInstance generate_instance(const Distribution& dist, std::size_t n, double b,
                                     std::uint64_t seed);

/// Label, then 1-based index:value pairs. cols = max index unless a larger
/// column count is given.
LassoData read_libsvm(const std::string& path, std::size_t cols = 0);
LassoData parse_libsvm(std::istream& in, std::size_t cols = 0);
void write_libsvm(const std::string& path, const LassoData& data);
void write_libsvm(std::ostream& out, const LassoData& data);

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::condat};
  std::size_t n = 1000000;
  Distribution dist;
  double b = 1.0;
  std::vector<std::size_t> workers{1};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string out;

  void validate() const;
};

/// key = value lines; '#' starts a comment; lists as [a, b] or a, b.
/// Keys: algorithm(s), n, dist, b, k, trials, seed, out.
BenchConfig parse_config(std::istream& in);
BenchConfig read_config(const std::string& path);

struct BenchRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::string dist;
  double b = 1.0;
  std::size_t k = 1;
  std::size_t trial = 0;
  std::int64_t time_ns = 0;
  std::size_t reduced_size = 0;
  double tau = 0.0;
};

/// One record per (algorithm, k, trial). Trial t solves the instance drawn
/// with seed + t. Every result is checked with verify_kkt and against the
/// reference pivot before it is recorded. Sorted by (algorithm, k, trial).
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg);

/// Columns: algorithm,n,dist,b,k,trial,time_ns,reduced_size,tau.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);

enum class Baseline { fastest_serial, same_algorithm_serial };
std::optional<Baseline> parse_baseline(std::string_view name);

struct SpeedupRow {
  std::string algorithm;
  std::size_t k = 1;
  std::size_t trials = 0;
  double median_ns = 0.0;
  std::optional<double> absolute;  // fastest serial median / this median
  std::optional<double> relative;  // serial counterpart median / this median
};

struct SpeedupReport {
  std::vector<SpeedupRow> rows;
  std::string fastest_serial;
  // Parallel rows at k = 1 that are no faster than the fastest serial run,
  // out of all parallel rows at k = 1.
  std::size_t one_core_not_faster = 0;
  std::size_t one_core_rows = 0;
};

/// Medians per (algorithm, k). Serial baselines are taken at k = 1. Throws
/// BenchError when the baseline the flag asks for is missing.
SpeedupReport speedup_report(const std::vector<BenchRecord>& records, Baseline baseline);

void write_report_csv(std::ostream& out, const SpeedupReport& report);
void write_report_table(std::ostream& out, const SpeedupReport& report);

}  // namespace simplexproj::bench
