#include "simplexproj/serial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <utility>

#include "finalize.hpp"
#include "sort.hpp"
#include "simplexproj/kernels.hpp"
#include "simplexproj/summation.hpp"

namespace simplexproj {
namespace {

struct Entry {
  double value;
  std::size_t index;
};

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

ProjectionResult sort_scan(InstanceView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  std::vector<Entry> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = {inst.d[i], i};
  // Entries start in index order and the sort is stable.
  detail::sort_descending(sorted.data(), sorted.data() + n, [](const Entry& e) { return e.value; });

  ProjectionResult out;
  out.stats.elements_scanned = n;
  out.stats.outer_iterations = 1;

  // The criterion holds for j <= kappa and fails afterwards.
  CompensatedSum prefix;
  std::size_t kappa = 0;
  for (std::size_t j = 0; j < n; ++j) {
    prefix.add(sorted[j].value);
    ++out.stats.elements_scanned;
    if ((prefix.value() - inst.b) / static_cast<double>(j + 1) < sorted[j].value) {
      kappa = j + 1;
    } else {
      break;
    }
  }
  kappa = std::max<std::size_t>(kappa, 1);

  std::vector<std::size_t> active(kappa);
  for (std::size_t j = 0; j < kappa; ++j) active[j] = sorted[j].index;
  out.projection = detail::finalize(inst, std::move(active));
  out.stats.pivots.push_back(out.projection.tau);
  out.stats.pass_sizes.push_back(kappa);
  return out;
}

ProjectionResult pivot_partition(InstanceView inst, PivotRule rule) {
  detail::check_finite(inst);
  if (rule.kind == PivotRule::Kind::michelot) return michelot(inst);

  const std::size_t n = inst.size();
  std::vector<Entry> work(n);
  for (std::size_t i = 0; i < n; ++i) work[i] = {inst.d[i], i};

  std::mt19937_64 rng(rule.seed);
  CompensatedSum committed_sum;
  std::size_t committed_count = 0;
  std::vector<std::size_t> committed;

  ProjectionResult out;
  auto lo = work.begin();
  auto hi = work.end();
  while (lo != hi) {
    const auto m = static_cast<std::size_t>(hi - lo);
    ++out.stats.outer_iterations;
    out.stats.elements_scanned += m;

    double pivot;
    if (rule.kind == PivotRule::Kind::random) {
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      pivot = (lo + static_cast<std::ptrdiff_t>(pick(rng)))->value;
    } else {
      auto mid = lo + static_cast<std::ptrdiff_t>((m - 1) / 2);
      std::nth_element(lo, mid, hi, [](const Entry& a, const Entry& b) { return a.value < b.value; });
      pivot = mid->value;
    }

    // Upper group includes the pivot and its ties so that either branch
    // removes at least the pivot from the candidates.
    auto upper_end = std::partition(lo, hi, [pivot](const Entry& e) { return e.value >= pivot; });
    CompensatedSum upper_sum;
    for (auto it = lo; it != upper_end; ++it) upper_sum.add(it->value);
    const auto upper_count = static_cast<std::size_t>(upper_end - lo);

    const double trial = (committed_sum.value() + upper_sum.value() - inst.b) /
                         static_cast<double>(committed_count + upper_count);
    if (trial < pivot) {
      // Everything at or above the pivot is active.
      for (auto it = lo; it != upper_end; ++it) committed.push_back(it->index);
      committed_sum.add(upper_sum.value());
      committed_count += upper_count;
      lo = upper_end;
    } else {
      // tau >= pivot: only entries strictly above it can be active.
      hi = std::partition(lo, upper_end, [pivot](const Entry& e) { return e.value > pivot; });
    }
    out.stats.pivots.push_back(pivot);
    out.stats.pass_sizes.push_back(static_cast<std::size_t>(hi - lo));
  }

  if (committed.empty()) committed = all_indices(n);
  out.projection = detail::finalize(inst, std::move(committed));
  return out;
}

ProjectionResult michelot(InstanceView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  std::vector<double> vals(inst.d.begin(), inst.d.end());
  std::vector<std::size_t> idx = all_indices(n);
  std::vector<double> next_vals(n);
  std::vector<std::size_t> next_idx(n);

  ProjectionResult out;
  double sum = kernels::sum(inst.d);
  out.stats.elements_scanned = n;
  std::size_t m = n;
  for (;;) {
    const double p = (sum - inst.b) / static_cast<double>(m);
    ++out.stats.outer_iterations;
    out.stats.elements_scanned += m;
    const auto kept = kernels::compact_above(std::span<const double>(vals.data(), m),
                                             std::span<const std::size_t>(idx.data(), m), p,
                                             next_vals.data(), next_idx.data());
    out.stats.pivots.push_back(p);
    // An empty pass only happens when b is below the resolution of d.
    if (kept.count == m || kept.count == 0) {
      out.stats.pass_sizes.push_back(m);
      break;
    }
    out.stats.pass_sizes.push_back(kept.count);
    vals.swap(next_vals);
    idx.swap(next_idx);
    m = kept.count;
    sum = kept.sum;
  }

  idx.resize(m);
  out.projection = detail::finalize(inst, std::move(idx));
  return out;
}

FilterResult filter(InstanceView inst) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  const auto d = inst.d;
  const double b = inst.b;

  FilterResult out;
  std::vector<std::size_t> active{0};
  std::vector<std::size_t> waiting;
  double p = d[0] - b;
  for (std::size_t i = 1; i < n; ++i) {
    if (d[i] > p) {
      p += (d[i] - p) / static_cast<double>(active.size() + 1);
      if (p > d[i] - b) {
        active.push_back(i);
      } else {
        waiting.insert(waiting.end(), active.begin(), active.end());
        active.assign(1, i);
        p = d[i] - b;
      }
    }
  }
  for (std::size_t i : waiting) {
    if (d[i] > p) {
      active.push_back(i);
      p += (d[i] - p) / static_cast<double>(active.size());
    }
  }
  std::sort(active.begin(), active.end());

  out.stats.elements_scanned = n + waiting.size();
  out.stats.outer_iterations = 1;
  out.stats.reduced_size = active.size();
  out.stats.pivots.push_back(p);
  out.stats.pass_sizes.push_back(active.size());
  out.indices = std::move(active);
  out.pivot = p;
  return out;
}

ProjectionResult condat_from(InstanceView inst, std::vector<std::size_t> candidates) {
  if (candidates.empty()) throw ProjectionError("Condat needs a nonempty candidate set");
  std::vector<double> vals(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) vals[j] = inst.d[candidates[j]];

  ProjectionResult out;
  out.stats.reduced_size = candidates.size();
  std::size_t m = vals.size();
  double p = (kernels::sum(std::span<const double>(vals.data(), m)) - inst.b) / static_cast<double>(m);
  out.stats.elements_scanned += m;

  bool removed = true;
  while (removed) {
    removed = false;
    ++out.stats.outer_iterations;
    out.stats.elements_scanned += m;
    std::size_t live = m;
    std::size_t w = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const double v = vals[r];
      if (v <= p && live > 1) {
        --live;
        p += (p - v) / static_cast<double>(live);
        removed = true;
      } else {
        vals[w] = v;
        candidates[w] = candidates[r];
        ++w;
      }
    }
    m = w;
    out.stats.pivots.push_back(p);
    out.stats.pass_sizes.push_back(m);
  }

  candidates.resize(m);
  out.projection = detail::finalize(inst, std::move(candidates));
  return out;
}

ProjectionResult condat(InstanceView inst) {
  FilterResult f = filter(inst);
  return condat_from(inst, std::move(f.indices));
}

std::size_t BucketParams::rounds(std::size_t buckets, double range, double tolerance) {
  if (buckets < 2) throw InvalidInstance("bucket method needs at least 2 buckets");
  if (!(tolerance > 0.0)) throw InvalidInstance("bucket tolerance must be positive");
  if (!(range > tolerance)) return 1;
  const double t = std::ceil(std::log(range / tolerance) / std::log(static_cast<double>(buckets)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

BucketEstimate bucket_estimate(InstanceView inst, BucketParams params) {
  detail::check_finite(inst);
  const std::size_t n = inst.size();
  const std::size_t c = params.buckets;
  if (c < 2) throw InvalidInstance("bucket method needs at least 2 buckets");
  const auto extent = kernels::min_max(inst.d);
  const double range = extent.max - extent.min;

  BucketEstimate est;
  est.tolerance = params.tolerance > 0.0 ? params.tolerance : 1e-9 * std::max(1.0, range);
  est.stats.elements_scanned = n;
  if (range == 0.0) {
    // All entries equal: every entry is active and tau = d - b/n.
    est.tau_bar = inst.d[0] - inst.b / static_cast<double>(n);
    est.candidates = all_indices(n);
    return est;
  }
  est.max_rounds = BucketParams::rounds(c, range, est.tolerance);

  std::vector<Entry> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = {inst.d[i], i};
  std::vector<Entry> scratch;
  std::vector<std::size_t> bucket_of;
  std::vector<std::size_t> offsets(c + 1);
  std::vector<double> bucket_sum(c);
  std::vector<double> bucket_max(c);

  CompensatedSum active_sum;
  std::size_t active_count = 0;
  std::vector<std::size_t> active;

  for (std::size_t round = 0; round < est.max_rounds && !current.empty(); ++round) {
    ++est.stats.outer_iterations;
    est.stats.elements_scanned += current.size();
    double lo = current[0].value;
    double hi = current[0].value;
    for (const Entry& e : current) {
      lo = std::min(lo, e.value);
      hi = std::max(hi, e.value);
    }
    const double width = hi - lo;
    // Threshold of bucket j (1-based); bucket j holds [p_j, p_{j-1}).
    auto threshold = [&](std::size_t j) {
      return width * static_cast<double>(c - j) / static_cast<double>(c) + lo;
    };

    bucket_of.assign(current.size(), 0);
    std::fill(offsets.begin(), offsets.end(), 0);
    for (std::size_t r = 0; r < current.size(); ++r) {
      const double v = current[r].value;
      std::size_t j = c;
      if (width > 0.0) {
        const double pos = std::floor((v - lo) * static_cast<double>(c) / width);
        j = c - std::min<std::size_t>(c - 1, static_cast<std::size_t>(std::max(0.0, pos)));
        while (j > 1 && v >= threshold(j - 1)) --j;
        while (j < c && v < threshold(j)) ++j;
      } else {
        j = 1;
      }
      bucket_of[r] = j - 1;
      ++offsets[j];
    }
    for (std::size_t j = 1; j <= c; ++j) offsets[j] += offsets[j - 1];
    scratch.resize(current.size());
    {
      std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
      for (std::size_t r = 0; r < current.size(); ++r) scratch[fill[bucket_of[r]]++] = current[r];
    }
    for (std::size_t j = 0; j < c; ++j) {
      CompensatedSum s;
      double mx = -INFINITY;
      for (std::size_t r = offsets[j]; r < offsets[j + 1]; ++r) {
        s.add(scratch[r].value);
        mx = std::max(mx, scratch[r].value);
      }
      bucket_sum[j] = s.value();
      bucket_max[j] = mx;
    }

    bool refine = false;
    for (std::size_t j = 0; j < c; ++j) {
      const std::size_t size_j = offsets[j + 1] - offsets[j];
      if (active_count + size_j == 0) continue;
      const double p =
          (active_sum.value() + bucket_sum[j] - inst.b) / static_cast<double>(active_count + size_j);
      if (p >= threshold(j + 1)) {
        // tau lies in this bucket's interval; refine inside it.
        current.assign(scratch.begin() + static_cast<std::ptrdiff_t>(offsets[j]),
                       scratch.begin() + static_cast<std::ptrdiff_t>(offsets[j + 1]));
        refine = true;
        break;
      }
      for (std::size_t r = offsets[j]; r < offsets[j + 1]; ++r) active.push_back(scratch[r].index);
      active_sum.add(bucket_sum[j]);
      active_count += size_j;
      if (j + 1 < c && offsets[j + 2] > offsets[j + 1] && p > bucket_max[j + 1]) {
        // tau sits in the gap above the next bucket: the active set is complete.
        break;
      }
    }
    if (!refine) current.clear();
    est.stats.pivots.push_back(active_count > 0
                                   ? (active_sum.value() - inst.b) / static_cast<double>(active_count)
                                   : lo);
    est.stats.pass_sizes.push_back(current.size());
  }

  // Superset of the active set: committed entries plus the unresolved bucket.
  CompensatedSum total = active_sum;
  for (const Entry& e : current) {
    total.add(e.value);
    active.push_back(e.index);
  }
  std::sort(active.begin(), active.end());
  est.tau_bar = (total.value() - inst.b) / static_cast<double>(active.size());
  est.candidates = std::move(active);
  return est;
}

ProjectionResult bucket(InstanceView inst, BucketParams params) {
  BucketEstimate est = bucket_estimate(inst, params);
  std::vector<std::size_t> identified;
  identified.reserve(est.candidates.size());
  for (std::size_t i : est.candidates) {
    if (inst.d[i] > est.tau_bar) identified.push_back(i);
  }
  if (identified.empty()) identified = std::move(est.candidates);

  ProjectionResult out;
  out.stats = std::move(est.stats);
  out.stats.reduced_size = identified.size();
  out.projection = detail::finalize(inst, std::move(identified));
  return out;
}

}  // namespace simplexproj
