#pragma once

// Name-based access to every simplex solver, for the extensions, the
// benchmark harness and the CLI.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "simplexproj/types.hpp"

namespace simplexproj {

enum class Algorithm {
  sort_scan,
  pivot_median,
  pivot_random,
  michelot,
  condat,
  bucket,
  parallel_sort_scan,
  parallel_pivot,
  parallel_condat,
};

/// Every algorithm, serial ones first.
std::span<const Algorithm> all_algorithms();

/// CLI name: sortscan, pp-median, pp-random, michelot, condat, bucket,
/// psortscan, ppivot, pcondat.
std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);

bool is_parallel(Algorithm alg);

/// Serial algorithm a parallel one distributes; serial algorithms map to
/// themselves.
Algorithm serial_counterpart(Algorithm alg);

using SimplexBackend = std::function<ProjectionResult(InstanceView)>;

/// k is ignored by serial algorithms; seed only matters for pp-random.
/// ppivot uses the median rule.
SimplexBackend make_backend(Algorithm alg, std::size_t k = 1, std::uint64_t seed = 0);

ProjectionResult solve(Algorithm alg, InstanceView inst, std::size_t k = 1, std::uint64_t seed = 0);

}  // namespace simplexproj
