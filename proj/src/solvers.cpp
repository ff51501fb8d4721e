#include "simplexproj/solvers.hpp"

#include <array>

#include "simplexproj/parallel.hpp"
#include "simplexproj/serial.hpp"

namespace simplexproj {
namespace {

struct Named {
  Algorithm alg;
  std::string_view name;
};

constexpr std::array<Named, 9> kNames{{
    {Algorithm::sort_scan, "sortscan"},
    {Algorithm::pivot_median, "pp-median"},
    {Algorithm::pivot_random, "pp-random"},
    {Algorithm::michelot, "michelot"},
    {Algorithm::condat, "condat"},
    {Algorithm::bucket, "bucket"},
    {Algorithm::parallel_sort_scan, "psortscan"},
    {Algorithm::parallel_pivot, "ppivot"},
    {Algorithm::parallel_condat, "pcondat"},
}};

constexpr std::array<Algorithm, 9> kAll{
    Algorithm::sort_scan,          Algorithm::pivot_median,   Algorithm::pivot_random,
    Algorithm::michelot,           Algorithm::condat,         Algorithm::bucket,
    Algorithm::parallel_sort_scan, Algorithm::parallel_pivot, Algorithm::parallel_condat,
};

}  // namespace

std::span<const Algorithm> all_algorithms() { return kAll; }

std::string_view to_string(Algorithm alg) {
  for (const auto& n : kNames) {
    if (n.alg == alg) return n.name;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.alg;
  }
  return std::nullopt;
}

bool is_parallel(Algorithm alg) {
  return alg == Algorithm::parallel_sort_scan || alg == Algorithm::parallel_pivot ||
         alg == Algorithm::parallel_condat;
}

Algorithm serial_counterpart(Algorithm alg) {
  switch (alg) {
    case Algorithm::parallel_sort_scan:
      return Algorithm::sort_scan;
    case Algorithm::parallel_pivot:
      return Algorithm::pivot_median;
    case Algorithm::parallel_condat:
      return Algorithm::condat;
    default:
      return alg;
  }
}

SimplexBackend make_backend(Algorithm alg, std::size_t k, std::uint64_t seed) {
  return [alg, k, seed](InstanceView inst) { return solve(alg, inst, k, seed); };
}

ProjectionResult solve(Algorithm alg, InstanceView inst, std::size_t k, std::uint64_t seed) {
  switch (alg) {
    case Algorithm::sort_scan:
      return sort_scan(inst);
    case Algorithm::pivot_median:
      return pivot_partition(inst, PivotRule::median());
    case Algorithm::pivot_random:
      return pivot_partition(inst, PivotRule::random(seed));
    case Algorithm::michelot:
      return michelot(inst);
    case Algorithm::condat:
      return condat(inst);
    case Algorithm::bucket:
      return bucket(inst);
    case Algorithm::parallel_sort_scan:
      return parallel_sort_scan(inst, k);
    case Algorithm::parallel_pivot:
      return parallel_pivot_partition(inst, k, PivotRule::median());
    case Algorithm::parallel_condat:
      return parallel_condat(inst, k);
  }
  throw InvalidInstance("unknown algorithm");
}

}  // namespace simplexproj
