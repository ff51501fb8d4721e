#include "finalize.hpp"

#include <algorithm>
#include <cmath>

#include "simplexproj/kernels.hpp"
#include "simplexproj/summation.hpp"

namespace simplexproj::detail {
namespace {

// Ascending order for a duplicate-free index set. Large sets are rebuilt
// from a mark array in one pass over [0, n).
void sort_indices(std::vector<std::size_t>& idx, std::size_t n) {
  if (std::is_sorted(idx.begin(), idx.end())) return;
  if (idx.size() < n / 16) {
    std::sort(idx.begin(), idx.end());
    return;
  }
  std::vector<unsigned char> mark(n, 0);
  for (std::size_t i : idx) mark[i] = 1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mark[i]) idx[j++] = i;
  }
}

}  // namespace

void check_finite(InstanceView inst) {
  if (!kernels::all_finite(inst.d)) validate(inst);
}

void check_finite(WeightedView inst) { validate(inst); }

SparseProjection finalize(InstanceView inst, std::vector<std::size_t> candidates) {
  sort_indices(candidates, inst.size());
  if (candidates.empty()) throw ProjectionError("finalize called with an empty candidate set");

  std::vector<double> vals(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) vals[j] = inst.d[candidates[j]];

  std::size_t m = vals.size();
  double tau = 0.0;
  for (;;) {
    tau = (kernels::sum(std::span<const double>(vals.data(), m)) - inst.b) / static_cast<double>(m);
    const auto above = kernels::sum_count_above(std::span<const double>(vals.data(), m), tau);
    // count == 0 only happens when b is below the resolution of the entries.
    if (above.count == m || above.count == 0) break;
    m = kernels::compact_above(std::span<const double>(vals.data(), m),
                               std::span<const std::size_t>(candidates.data(), m), tau,
                               vals.data(), candidates.data())
            .count;
  }

  SparseProjection out;
  out.tau = tau;
  out.indices.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(m));
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.values[j] = vals[j] - tau;
  return out;
}

SparseProjection finalize_weighted(WeightedView inst, std::vector<std::size_t> candidates) {
  sort_indices(candidates, inst.size());
  if (candidates.empty()) throw ProjectionError("finalize called with an empty candidate set");

  double tau = 0.0;
  for (;;) {
    CompensatedSum wd;
    CompensatedSum ww;
    for (std::size_t i : candidates) {
      wd.add(inst.w[i] * inst.d[i]);
      ww.add(inst.w[i] * inst.w[i]);
    }
    tau = (wd.value() - inst.b) / ww.value();
    std::vector<std::size_t> kept;
    kept.reserve(candidates.size());
    for (std::size_t i : candidates) {
      if (inst.d[i] / inst.w[i] > tau) kept.push_back(i);
    }
    if (kept.size() == candidates.size() || kept.empty()) break;
    candidates = std::move(kept);
  }

  SparseProjection out;
  out.tau = tau;
  out.indices = std::move(candidates);
  out.values.reserve(out.indices.size());
  for (std::size_t i : out.indices) out.values.push_back(inst.d[i] - inst.w[i] * tau);
  return out;
}

}  // namespace simplexproj::detail
