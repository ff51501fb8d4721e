#include "simplexproj/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "finalize.hpp"
#include "parallel_util.hpp"
#include "sort.hpp"
#include "simplexproj/summation.hpp"

namespace simplexproj {
namespace {

struct Entry {
  double value;
  std::size_t index;
};

bool descending(const Entry& a, const Entry& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

InstanceView slice(InstanceView inst, IndexRange r) {
  return InstanceView(inst.d.subspan(r.begin, r.size()), inst.b);
}

ReducedInstance gather(InstanceView inst, std::vector<std::size_t> indices) {
  ReducedInstance out;
  out.b = inst.b;
  out.values.resize(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) out.values[j] = inst.d[indices[j]];
  out.indices = std::move(indices);
  return out;
}

void flag_density(SolverStats& stats, std::size_t survivors, std::size_t n) {
  stats.reduced_size = survivors;
  stats.dense_fallback = static_cast<double>(survivors) > 0.9 * static_cast<double>(n);
}

// Maps a projection of the reduced instance back to original indices.
SparseProjection lift(const ReducedInstance& reduced, SparseProjection proj) {
  for (auto& i : proj.indices) i = reduced.indices[i];
  return proj;
}

std::vector<Entry> parallel_sort(InstanceView inst, const WorkerPlan& plan) {
  std::vector<Entry> a(inst.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = {inst.d[i], i};
  detail::parallel_merge_sort(a, plan, descending, [](Entry* first, Entry* last) {
    detail::sort_descending(first, last, [](const Entry& e) { return e.value; });
  });
  return a;
}

bool feasible(double prefix, double b, std::size_t kappa, double value) {
  return (prefix - b) / static_cast<double>(kappa) < value;
}

}  // namespace

WorkerPlan make_plan(std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidInstance("plan needs n >= 1");
  if (k == 0) throw InvalidInstance("plan needs k >= 1");
  WorkerPlan plan;
  plan.k = std::min(k, n);
  const std::size_t base = n / plan.k;
  const std::size_t extra = n % plan.k;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < plan.k; ++t) {
    const std::size_t len = base + (t < extra ? 1 : 0);
    plan.partitions.push_back({begin, begin + len});
    begin += len;
  }
  return plan;
}

std::size_t worker_threads() {
  const auto fallback = static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
  const char* env = std::getenv("SIMPLEXPROJ_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    const long v = std::stol(env);
    return v >= 1 ? static_cast<std::size_t>(v) : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

Preprocessed distributed_preprocess(InstanceView inst, const WorkerPlan& plan,
                                    const LocalSolver& local_solver) {
  detail::check_finite(inst);
  const std::size_t parts = plan.partitions.size();
  std::vector<std::vector<std::size_t>> local(parts);
  std::vector<SolverStats> local_stats(parts);
  detail::run_tasks(parts, [&](std::size_t t) {
    const IndexRange r = plan.partitions[t];
    ProjectionResult res = local_solver(slice(inst, r));
    local[t].reserve(res.projection.support());
    for (std::size_t j = 0; j < res.projection.indices.size(); ++j) {
      if (res.projection.values[j] > 0.0) local[t].push_back(r.begin + res.projection.indices[j]);
    }
    local_stats[t] = std::move(res.stats);
  });

  // Ranges are ascending and each local support is ascending.
  std::vector<std::size_t> survivors;
  Preprocessed out;
  for (std::size_t t = 0; t < parts; ++t) {
    survivors.insert(survivors.end(), local[t].begin(), local[t].end());
    out.stats.merge_counts(local_stats[t]);
  }
  flag_density(out.stats, survivors.size(), inst.size());
  out.reduced = gather(inst, std::move(survivors));
  return out;
}

ProjectionResult parallel_pivot_partition(InstanceView inst, std::size_t k, PivotRule rule) {
  detail::check_finite(inst);
  const WorkerPlan plan = make_plan(inst.size(), k);
  const LocalSolver solver = [rule](InstanceView part) { return pivot_partition(part, rule); };
  Preprocessed pre = distributed_preprocess(inst, plan, solver);
  ProjectionResult final_stage = solver(pre.reduced.view());

  ProjectionResult out;
  out.stats = std::move(final_stage.stats);
  out.stats.merge_counts(pre.stats);
  out.stats.reduced_size = pre.stats.reduced_size;
  out.stats.dense_fallback = pre.stats.dense_fallback;
  out.projection = lift(pre.reduced, std::move(final_stage.projection));
  return out;
}

FilterResult distributed_filter(InstanceView inst, const WorkerPlan& plan) {
  detail::check_finite(inst);
  const std::size_t parts = plan.partitions.size();
  std::vector<std::vector<std::size_t>> local(parts);
  std::vector<double> pivots(parts);
  std::vector<SolverStats> local_stats(parts);
  detail::run_tasks(parts, [&](std::size_t t) {
    const IndexRange r = plan.partitions[t];
    FilterResult f = filter(slice(inst, r));
    double p = f.pivot;
    std::size_t live = f.indices.size();
    std::vector<std::size_t>& keep = local[t];
    keep.reserve(live);
    for (std::size_t j : f.indices) {
      const double v = inst.d[r.begin + j];
      if (v <= p && live > 1) {
        --live;
        p += (p - v) / static_cast<double>(live);
      } else {
        keep.push_back(r.begin + j);
      }
    }
    f.stats.elements_scanned += f.indices.size();
    pivots[t] = p;
    local_stats[t] = std::move(f.stats);
  });

  FilterResult out;
  for (std::size_t t = 0; t < parts; ++t) {
    out.indices.insert(out.indices.end(), local[t].begin(), local[t].end());
    out.stats.merge_counts(local_stats[t]);
  }
  // Each local pivot is a lower bound on tau; keep the sharpest.
  out.pivot = *std::max_element(pivots.begin(), pivots.end());
  flag_density(out.stats, out.indices.size(), inst.size());
  out.stats.pivots.push_back(out.pivot);
  out.stats.pass_sizes.push_back(out.indices.size());
  return out;
}

ProjectionResult parallel_condat(InstanceView inst, std::size_t k) {
  FilterResult f = distributed_filter(inst, make_plan(inst.size(), k));
  const SolverStats pre = f.stats;
  ProjectionResult out = condat_from(inst, std::move(f.indices));
  out.stats.merge_counts(pre);
  out.stats.reduced_size = pre.reduced_size;
  out.stats.dense_fallback = pre.dense_fallback;
  return out;
}

ProjectionResult parallel_sort_scan(InstanceView inst, std::size_t k) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  const double b = inst.b;
  const WorkerPlan plan = make_plan(n, k);
  const std::vector<Entry> sorted = parallel_sort(inst, plan);

  ProjectionResult out;
  out.stats.elements_scanned = n;
  out.stats.outer_iterations = 1;

  // Up-sweep: after level j, s[m - 1] holds the sum of the 2^j entries
  // ending at position m for every multiple m of 2^j.
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sorted[i].value;
  std::size_t level = 0;
  std::size_t hi = 1;  // the criterion always holds at kappa = 1
  bool stopped = false;
  while (hi < n) {
    ++level;
    const std::size_t step = std::size_t{1} << level;
    const std::size_t half = step / 2;
    const auto blocks = static_cast<std::ptrdiff_t>(n / step);
#pragma omp parallel for schedule(static) num_threads(detail::team_size(plan.k)) if (blocks > 4096)
    for (std::ptrdiff_t q = 1; q <= blocks; ++q) {
      const auto m = static_cast<std::size_t>(q) * step;
      s[m - 1] += s[m - 1 - half];
    }
    out.stats.elements_scanned += static_cast<std::size_t>(blocks);

    std::size_t kappa = std::min(n, step);
    double prefix = 0.0;
    if (kappa == step) {
      prefix = s[kappa - 1];
    } else {
      // n is not a power of two: assemble its prefix from the block sums.
      std::size_t pos = 0;
      for (std::size_t l = level; l-- > 0;) {
        const std::size_t len = std::size_t{1} << l;
        if (pos + len <= n) {
          prefix += s[pos + len - 1];
          pos += len;
        }
      }
    }
    if (!feasible(prefix, b, kappa, sorted[kappa - 1].value)) {
      stopped = true;
      hi = kappa;
      break;
    }
    hi = kappa;
  }

  std::size_t kappa = hi;
  if (stopped) {
    // The criterion holds at p = 2^(level-1) and fails at hi. Binary descent
    // over the block sums, keeping the candidate while the criterion holds.
    std::size_t p = std::size_t{1} << (level - 1);
    double prefix = s[p - 1];
    for (std::size_t l = level - 1; l-- > 0;) {
      const std::size_t mid = p + (std::size_t{1} << l);
      if (mid >= hi) continue;
      const double trial = prefix + s[mid - 1];
      if (feasible(trial, b, mid, sorted[mid - 1].value)) {
        p = mid;
        prefix = trial;
      }
    }
    kappa = p;
  }

  // The block sums are plain doubles; confirm kappa against the compensated
  // prefix scan so that near-ties resolve exactly as in sort_scan.
  CompensatedSum exact;
  std::size_t confirmed = 0;
  for (std::size_t j = 0; j < n; ++j) {
    exact.add(sorted[j].value);
    if (!feasible(exact.value(), b, j + 1, sorted[j].value)) break;
    confirmed = j + 1;
    if (j >= kappa) out.stats.elements_scanned += 1;
  }
  out.stats.elements_scanned += std::min(kappa, n);
  kappa = std::max<std::size_t>(confirmed, 1);

  std::vector<std::size_t> active(kappa);
  for (std::size_t j = 0; j < kappa; ++j) active[j] = sorted[j].index;
  out.projection = detail::finalize(inst, std::move(active));
  out.stats.pivots.push_back(out.projection.tau);
  out.stats.pass_sizes.push_back(kappa);
  return out;
}

}  // namespace simplexproj
