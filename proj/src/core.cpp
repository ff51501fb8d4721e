#include "simplexproj/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "simplexproj/kernels.hpp"
#include "simplexproj/summation.hpp"
#include "sort.hpp"

namespace simplexproj {

double pivot_fn(InstanceView inst, double t) {
  const auto [sum, count] = kernels::sum_count_above(inst.d, t);
  if (count == 0) return -inst.b;
  return (sum - inst.b) / static_cast<double>(count) - t;
}

SparseProjection reconstruct(InstanceView inst, double tau, double tol) {
  SparseProjection out;
  out.tau = tau;
  CompensatedSum total;
  for (std::size_t i = 0; i < inst.d.size(); ++i) {
    if (inst.d[i] > tau) {
      out.indices.push_back(i);
      out.values.push_back(inst.d[i] - tau);
      total.add(inst.d[i] - tau);
    }
  }
  const double residual = total.value() - inst.b;
  if (std::fabs(residual) > tol * std::max(1.0, inst.b)) {
    std::ostringstream msg;
    msg << "reconstruction from tau=" << tau << " misses the simplex constraint by " << residual;
    throw ProjectionError(msg.str());
  }
  return out;
}

std::string explain_kkt(InstanceView inst, const SparseProjection& proj, double tol) {
  std::ostringstream why;
  const std::size_t n = inst.d.size();
  if (proj.indices.size() != proj.values.size()) return "indices and values differ in length";
  CompensatedSum total;
  std::size_t next = 0;
  for (std::size_t j = 0; j < proj.indices.size(); ++j) {
    const std::size_t i = proj.indices[j];
    if (i >= n) return "index out of range";
    if (j > 0 && i <= proj.indices[j - 1]) return "indices not strictly increasing";
    // Entries skipped between the previous and this index are excluded.
    for (; next < i; ++next) {
      if (inst.d[next] > proj.tau + tol) {
        why << "excluded entry " << next << " exceeds tau: " << inst.d[next] << " > " << proj.tau;
        return why.str();
      }
    }
    next = i + 1;
    const double v = proj.values[j];
    if (!(v > -tol)) {
      why << "value at " << i << " is negative: " << v;
      return why.str();
    }
    if (std::fabs(v - (inst.d[i] - proj.tau)) > tol) {
      why << "value at " << i << " is " << v << ", expected " << inst.d[i] - proj.tau;
      return why.str();
    }
    total.add(v);
  }
  for (; next < n; ++next) {
    if (inst.d[next] > proj.tau + tol) {
      why << "excluded entry " << next << " exceeds tau: " << inst.d[next] << " > " << proj.tau;
      return why.str();
    }
  }
  if (std::fabs(total.value() - inst.b) > tol * std::max(1.0, inst.b)) {
    why << "sum of values is " << total.value() << ", expected " << inst.b;
    return why.str();
  }
  return {};
}

bool verify_kkt(InstanceView inst, const SparseProjection& proj, double tol) {
  return explain_kkt(inst, proj, tol).empty();
}

std::size_t scan_kappa(std::span<const double> sorted_desc, double b) {
  CompensatedSum prefix;
  std::size_t kappa = sorted_desc.empty() ? 0 : 1;
  for (std::size_t j = 0; j < sorted_desc.size(); ++j) {
    prefix.add(sorted_desc[j]);
    if ((prefix.value() - b) / static_cast<double>(j + 1) < sorted_desc[j]) kappa = j + 1;
  }
  return kappa;
}

SparseProjection reference_project(InstanceView inst) {
  validate(inst);
  std::vector<double> sorted(inst.d.begin(), inst.d.end());
  detail::sort_descending(sorted.data(), sorted.data() + sorted.size(), [](double x) { return x; });
  const std::size_t kappa = scan_kappa(sorted, inst.b);
  CompensatedSum top;
  for (std::size_t j = 0; j < kappa; ++j) top.add(sorted[j]);
  const double tau = (top.value() - inst.b) / static_cast<double>(kappa);

  SparseProjection out;
  out.tau = tau;
  for (std::size_t i = 0; i < inst.d.size(); ++i) {
    if (inst.d[i] > tau) {
      out.indices.push_back(i);
      out.values.push_back(inst.d[i] - tau);
    }
  }
  return out;
}

double expected_support_bound(std::size_t n, double b, double l, double u) {
  if (!(u > l)) throw InvalidInstance("support bound needs u > l");
  if (!(b > 0.0)) throw InvalidInstance("support bound needs b > 0");
  if (n == 0) throw InvalidInstance("support bound needs n >= 1");
  const double bound =
      std::sqrt(2.0 * b * (static_cast<double>(n) + 1.0) / (u - l) + 0.25) + 0.5;
  return std::min(bound, static_cast<double>(n));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

SparsityCertificate sparsity_certificate(std::size_t n, double t, double tail_prob,
                                         double tail_mean, double tail_var, double b, double q) {
  if (n == 0) throw InvalidInstance("certificate needs n >= 1");
  if (!(tail_prob > 0.0 && tail_prob < 1.0)) throw InvalidInstance("tail_prob must lie in (0,1)");
  if (!(tail_mean > t)) {
    throw InvalidInstance("tail_mean must exceed t; the Chebyshev step needs E[X | X > t] > t");
  }
  if (!(tail_var >= 0.0)) throw InvalidInstance("tail_var must be nonnegative");
  if (!(b > 0.0)) throw InvalidInstance("scale b must be positive");
  if (!(q >= 0.0)) throw InvalidInstance("q must be nonnegative");

  const double nn = static_cast<double>(n);
  const double mean = nn * tail_prob;
  const double sd = std::sqrt(nn * tail_prob * (1.0 - tail_prob));

  SparsityCertificate c;
  c.interval_low = std::max(0.0, std::floor(mean - q * sd));
  c.interval_high = std::min(nn, std::ceil(mean + q * sd));
  c.interval_probability = 2.0 * normal_cdf(q) - 1.0;

  // Chebyshev at the left endpoint of the interval.
  const double m = c.interval_low;
  const double gap = (tail_mean - t) * m - b;
  c.conditional_bound = gap > 0.0 ? std::max(0.0, 1.0 - tail_var * m / (gap * gap)) : 0.0;
  c.probability_lower_bound = c.conditional_bound * c.interval_probability;
  return c;
}

SparsityCertificate sparsity_certificate(std::size_t n, double t, double tail_prob,
                                         double tail_mean, double tail_var, double b) {
  const double q = n > 1 ? std::sqrt(2.0 * std::log(static_cast<double>(n))) : 0.0;
  return sparsity_certificate(n, t, tail_prob, tail_mean, tail_var, b, q);
}

}  // namespace simplexproj
