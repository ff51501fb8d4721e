#include "simplexproj/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "finalize.hpp"
#include "parallel_util.hpp"
#include "sort.hpp"
#include "simplexproj/parallel.hpp"
#include "simplexproj/summation.hpp"

namespace simplexproj {
namespace {

struct Ratio {
  double z;
  std::size_t index;
};

bool descending(const Ratio& a, const Ratio& b) {
  return a.z > b.z || (a.z == b.z && a.index < b.index);
}

WeightedView slice(WeightedView inst, IndexRange r) {
  return WeightedView(inst.d.subspan(r.begin, r.size()), inst.w.subspan(r.begin, r.size()), inst.b);
}

// Running sum_i w_i d_i and sum_i w_i^2 over a candidate set.
struct Moments {
  CompensatedSum wd;
  CompensatedSum ww;

  void add(double d, double w) {
    wd.add(w * d);
    ww.add(w * w);
  }
  void remove(double d, double w) {
    wd.add(-(w * d));
    ww.add(-(w * w));
  }
  double pivot(double b) const { return (wd.value() - b) / ww.value(); }
};

}  // namespace

ProjectionResult weighted_michelot(WeightedView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  std::vector<std::size_t> candidates(n);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});

  ProjectionResult out;
  for (;;) {
    Moments m;
    for (std::size_t i : candidates) m.add(inst.d[i], inst.w[i]);
    const double p = m.pivot(inst.b);
    ++out.stats.outer_iterations;
    out.stats.elements_scanned += 2 * candidates.size();
    std::vector<std::size_t> kept;
    kept.reserve(candidates.size());
    for (std::size_t i : candidates) {
      if (inst.d[i] / inst.w[i] > p) kept.push_back(i);
    }
    out.stats.pivots.push_back(p);
    if (kept.size() == candidates.size() || kept.empty()) {
      out.stats.pass_sizes.push_back(candidates.size());
      break;
    }
    out.stats.pass_sizes.push_back(kept.size());
    candidates = std::move(kept);
  }
  out.projection = detail::finalize_weighted(inst, std::move(candidates));
  return out;
}

FilterResult weighted_filter(WeightedView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  const auto d = inst.d;
  const auto w = inst.w;
  const double b = inst.b;

  std::vector<std::size_t> active{0};
  std::vector<std::size_t> waiting;
  Moments m;
  m.add(d[0], w[0]);
  double p = m.pivot(b);
  for (std::size_t i = 1; i < n; ++i) {
    if (d[i] / w[i] > p) {
      const double alone = (w[i] * d[i] - b) / (w[i] * w[i]);
      Moments trial = m;
      trial.add(d[i], w[i]);
      p = trial.pivot(b);
      if (p > alone) {
        active.push_back(i);
        m = trial;
      } else {
        waiting.insert(waiting.end(), active.begin(), active.end());
        active.assign(1, i);
        m = Moments{};
        m.add(d[i], w[i]);
        p = alone;
      }
    }
  }
  for (std::size_t i : waiting) {
    if (d[i] / w[i] > p) {
      active.push_back(i);
      m.add(d[i], w[i]);
      p = m.pivot(b);
    }
  }
  std::sort(active.begin(), active.end());

  FilterResult out;
  out.stats.elements_scanned = n + waiting.size();
  out.stats.outer_iterations = 1;
  out.stats.reduced_size = active.size();
  out.stats.pivots.push_back(p);
  out.stats.pass_sizes.push_back(active.size());
  out.indices = std::move(active);
  out.pivot = p;
  return out;
}

ProjectionResult weighted_condat_from(WeightedView inst, std::vector<std::size_t> candidates) {
  detail::check_finite(inst);
  if (candidates.empty()) throw ProjectionError("Condat needs a nonempty candidate set");
  ProjectionResult out;
  out.stats.reduced_size = candidates.size();
  Moments m;
  for (std::size_t i : candidates) m.add(inst.d[i], inst.w[i]);
  double p = m.pivot(inst.b);
  out.stats.elements_scanned += candidates.size();

  bool removed = true;
  while (removed) {
    removed = false;
    ++out.stats.outer_iterations;
    out.stats.elements_scanned += candidates.size();
    std::size_t live = candidates.size();
    std::size_t kept = 0;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      const std::size_t i = candidates[r];
      if (inst.d[i] / inst.w[i] <= p && live > 1) {
        --live;
        m.remove(inst.d[i], inst.w[i]);
        p = m.pivot(inst.b);
        removed = true;
      } else {
        candidates[kept++] = i;
      }
    }
    candidates.resize(kept);
    out.stats.pivots.push_back(p);
    out.stats.pass_sizes.push_back(kept);
  }
  out.projection = detail::finalize_weighted(inst, std::move(candidates));
  return out;
}

ProjectionResult weighted_condat(WeightedView inst) {
  FilterResult f = weighted_filter(inst);
  return weighted_condat_from(inst, std::move(f.indices));
}

ProjectionResult weighted_sort_scan_parallel(WeightedView inst, std::size_t k) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  const WorkerPlan plan = make_plan(n, k);
  std::vector<Ratio> order(n);
  detail::run_tasks(plan.partitions.size(), [&](std::size_t t) {
    for (std::size_t i = plan.partitions[t].begin; i < plan.partitions[t].end; ++i) {
      order[i] = {inst.d[i] / inst.w[i], i};
    }
  });
  detail::parallel_merge_sort(order, plan, descending, [](Ratio* first, Ratio* last) {
    detail::sort_descending(first, last, [](const Ratio& r) { return r.z; });
  });

  ProjectionResult out;
  out.stats.elements_scanned = n;
  out.stats.outer_iterations = 1;
  Moments m;
  std::size_t kappa = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = order[j].index;
    m.add(inst.d[i], inst.w[i]);
    ++out.stats.elements_scanned;
    if (m.pivot(inst.b) < order[j].z) {
      kappa = j + 1;
    } else {
      break;
    }
  }
  kappa = std::max<std::size_t>(kappa, 1);

  std::vector<std::size_t> active(kappa);
  for (std::size_t j = 0; j < kappa; ++j) active[j] = order[j].index;
  out.projection = detail::finalize_weighted(inst, std::move(active));
  out.stats.pivots.push_back(out.projection.tau);
  out.stats.pass_sizes.push_back(kappa);
  return out;
}

ProjectionResult distributed_weighted_project(WeightedView inst, std::size_t k,
                                              WeightedVariant variant) {
  detail::check_finite(inst);
  const WorkerPlan plan = make_plan(inst.size(), k);
  const std::size_t parts = plan.partitions.size();
  auto local_solve = [variant](WeightedView part) {
    return variant == WeightedVariant::pivot ? weighted_michelot(part) : weighted_condat(part);
  };

  std::vector<std::vector<std::size_t>> local(parts);
  std::vector<SolverStats> local_stats(parts);
  detail::run_tasks(parts, [&](std::size_t t) {
    const IndexRange r = plan.partitions[t];
    ProjectionResult res = local_solve(slice(inst, r));
    for (std::size_t j = 0; j < res.projection.indices.size(); ++j) {
      if (res.projection.values[j] > 0.0) local[t].push_back(r.begin + res.projection.indices[j]);
    }
    local_stats[t] = std::move(res.stats);
  });

  std::vector<std::size_t> survivors;
  SolverStats pre;
  for (std::size_t t = 0; t < parts; ++t) {
    survivors.insert(survivors.end(), local[t].begin(), local[t].end());
    pre.merge_counts(local_stats[t]);
  }
  const std::size_t reduced = survivors.size();

  ProjectionResult out;
  if (variant == WeightedVariant::condat) {
    out = weighted_condat_from(inst, std::move(survivors));
  } else {
    std::vector<double> d(reduced);
    std::vector<double> w(reduced);
    for (std::size_t j = 0; j < reduced; ++j) {
      d[j] = inst.d[survivors[j]];
      w[j] = inst.w[survivors[j]];
    }
    out = weighted_michelot(WeightedView(d, w, inst.b));
    for (auto& i : out.projection.indices) i = survivors[i];
  }
  out.stats.merge_counts(pre);
  out.stats.reduced_size = reduced;
  out.stats.dense_fallback = static_cast<double>(reduced) > 0.9 * static_cast<double>(inst.size());
  return out;
}

BallProjection project_weighted_l1_ball(WeightedView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  CompensatedSum norm;
  for (std::size_t i = 0; i < n; ++i) norm.add(inst.w[i] * std::fabs(inst.d[i]));

  BallProjection out;
  if (norm.value() <= inst.b) {
    out.interior = true;
    out.projection.indices.resize(n);
    std::iota(out.projection.indices.begin(), out.projection.indices.end(), std::size_t{0});
    out.projection.values.assign(inst.d.begin(), inst.d.end());
    return out;
  }

  std::vector<std::size_t> nonzero;
  std::vector<double> magnitude;
  std::vector<double> weight;
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.d[i] != 0.0) {
      nonzero.push_back(i);
      magnitude.push_back(std::fabs(inst.d[i]));
      weight.push_back(inst.w[i]);
    }
  }
  ProjectionResult res = weighted_condat(WeightedView(magnitude, weight, inst.b));
  out.stats = std::move(res.stats);
  out.projection = std::move(res.projection);
  for (std::size_t j = 0; j < out.projection.indices.size(); ++j) {
    const std::size_t i = nonzero[out.projection.indices[j]];
    out.projection.indices[j] = i;
    if (inst.d[i] < 0.0) out.projection.values[j] = -out.projection.values[j];
  }
  return out;
}

std::string explain_weighted_kkt(WeightedView inst, const SparseProjection& proj, double tol) {
  std::ostringstream why;
  const std::size_t n = inst.size();
  if (proj.indices.size() != proj.values.size()) return "indices and values differ in length";
  CompensatedSum total;
  std::size_t next = 0;
  auto check_excluded = [&](std::size_t upto) -> bool {
    for (; next < upto; ++next) {
      if (inst.d[next] / inst.w[next] > proj.tau + tol) {
        why << "excluded entry " << next << " has ratio " << inst.d[next] / inst.w[next]
            << " > tau " << proj.tau;
        return false;
      }
    }
    return true;
  };
  for (std::size_t j = 0; j < proj.indices.size(); ++j) {
    const std::size_t i = proj.indices[j];
    if (i >= n) return "index out of range";
    if (j > 0 && i <= proj.indices[j - 1]) return "indices not strictly increasing";
    if (!check_excluded(i)) return why.str();
    next = i + 1;
    const double v = proj.values[j];
    if (!(v > -tol)) {
      why << "value at " << i << " is negative: " << v;
      return why.str();
    }
    const double expected = inst.d[i] - inst.w[i] * proj.tau;
    if (std::fabs(v - expected) > tol * std::max(1.0, std::fabs(inst.d[i]))) {
      why << "value at " << i << " is " << v << ", expected " << expected;
      return why.str();
    }
    total.add(inst.w[i] * v);
  }
  if (!check_excluded(n)) return why.str();
  if (std::fabs(total.value() - inst.b) > tol * std::max(1.0, inst.b)) {
    why << "weighted sum of values is " << total.value() << ", expected " << inst.b;
    return why.str();
  }
  return {};
}

bool verify_weighted_kkt(WeightedView inst, const SparseProjection& proj, double tol) {
  return explain_weighted_kkt(inst, proj, tol).empty();
}

}  // namespace simplexproj
