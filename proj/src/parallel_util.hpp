#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

#include "simplexproj/parallel.hpp"

namespace simplexproj::detail {

inline int team_size(std::size_t tasks) {
  return static_cast<int>(std::max<std::size_t>(1, std::min(tasks, worker_threads())));
}

// Runs body(t) for t in [0, tasks) on the OpenMP team and rethrows the first
// exception (by task order) on the calling thread.
template <typename Body>
void run_tasks(std::size_t tasks, Body body) {
  std::vector<std::exception_ptr> errors(tasks);
  const auto count = static_cast<std::ptrdiff_t>(tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(team_size(tasks))
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    try {
      body(static_cast<std::size_t>(t));
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Sorts each plan range on its own worker with chunk_sort(first, last),
// then merges runs pairwise with less.
template <typename T, typename Less, typename ChunkSort>
void parallel_merge_sort(std::vector<T>& a, const WorkerPlan& plan, Less less, ChunkSort chunk_sort) {
  const std::size_t n = a.size();
  std::vector<std::size_t> bounds;
  for (const auto& r : plan.partitions) bounds.push_back(r.begin);
  bounds.push_back(n);

  run_tasks(plan.partitions.size(), [&](std::size_t t) {
    chunk_sort(a.data() + bounds[t], a.data() + bounds[t + 1]);
  });

  std::vector<T> buf(n);
  while (bounds.size() > 2) {
    const std::size_t runs = bounds.size() - 1;
    const std::size_t pairs = (runs + 1) / 2;
    run_tasks(pairs, [&](std::size_t p) {
      const auto first = static_cast<std::ptrdiff_t>(bounds[2 * p]);
      const auto mid = static_cast<std::ptrdiff_t>(bounds[std::min(2 * p + 1, runs)]);
      const auto last = static_cast<std::ptrdiff_t>(bounds[std::min(2 * p + 2, runs)]);
      std::merge(a.begin() + first, a.begin() + mid, a.begin() + mid, a.begin() + last,
                 buf.begin() + first, less);
    });
    a.swap(buf);
    std::vector<std::size_t> merged;
    for (std::size_t p = 0; p < pairs; ++p) merged.push_back(bounds[2 * p]);
    merged.push_back(n);
    bounds.swap(merged);
  }
}

}  // namespace simplexproj::detail
