#pragma once

// Distributed preprocessing: each worker projects its own contiguous slice
// onto the same b-scaled simplex. Entries zeroed locally are zero globally,
// so the union of local supports is a (usually much smaller) superset of the
// active set that a single serial solve finishes.

#include <cstddef>
#include <functional>
#include <vector>

#include "simplexproj/serial.hpp"
#include "simplexproj/types.hpp"

namespace simplexproj {

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
};

struct WorkerPlan {
  std::size_t k = 1;
  std::vector<IndexRange> partitions;
};

/// min(k, n) contiguous ranges covering [0, n), sizes differing by at most 1.
WorkerPlan make_plan(std::size_t n, std::size_t k);

/// Threads the parallel regions may use: SIMPLEXPROJ_THREADS if set,
/// otherwise the OpenMP default.
std::size_t worker_threads();

using LocalSolver = std::function<ProjectionResult(InstanceView)>;

/// Survivors of the distributed step, in ascending original index order.
struct ReducedInstance {
  std::vector<std::size_t> indices;
  std::vector<double> values;
  double b = 1.0;

  InstanceView view() const { return InstanceView(values, b); }
};

struct Preprocessed {
  ReducedInstance reduced;
  SolverStats stats;
};

Preprocessed distributed_preprocess(InstanceView inst, const WorkerPlan& plan,
                                    const LocalSolver& local_solver);

/// Local pivot_partition (or michelot) on each worker, then the same solver
/// on the union of survivors.
ProjectionResult parallel_pivot_partition(InstanceView inst, std::size_t k, PivotRule rule);

/// Filter on each worker followed by one local removal pass. The returned
/// index set is ascending and contains the active set.
FilterResult distributed_filter(InstanceView inst, const WorkerPlan& plan);

/// distributed_filter, then Condat's main loop on the survivors.
ProjectionResult parallel_condat(InstanceView inst, std::size_t k);

/// Parallel merge sort and a doubling prefix scan with early exit. Same
/// active set and tau as sort_scan.
ProjectionResult parallel_sort_scan(InstanceView inst, std::size_t k);

}  // namespace simplexproj
