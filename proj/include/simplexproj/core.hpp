#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "simplexproj/types.hpp"

namespace simplexproj {

/// f(t) = (sum_{d_i > t} d_i - b) / |{d_i > t}| - t for t < max(d), -b otherwise.
/// Positive below the optimal pivot, negative above it, zero at it.
double pivot_fn(InstanceView inst, double t);

/// Builds the projection max(d_i - tau, 0). Throws ProjectionError when the
/// result misses sum(v) = b by more than tol * max(1, b) (tau is not optimal).
SparseProjection reconstruct(InstanceView inst, double tau, double tol = kDefaultTolerance);

/// Checks the optimality conditions of a simplex projection:
/// feasibility of the sum, sign of the values, exclusion of entries at or
/// below tau and the values d_i - tau of the included entries.
bool verify_kkt(InstanceView inst, const SparseProjection& proj, double tol = kDefaultTolerance);

/// Human-readable reason for a KKT failure, empty when the check passes.
std::string explain_kkt(InstanceView inst, const SparseProjection& proj,
                        double tol = kDefaultTolerance);

/// Trusted oracle: full descending sort and compensated prefix scan.
/// Validates the instance (finite entries, b > 0, n >= 1).
SparseProjection reference_project(InstanceView inst);

/// Index of the largest kappa (1-based count) with
/// (sum_{i<=j} sorted_i - b) / j < sorted_j, over a descending sorted span.
std::size_t scan_kappa(std::span<const double> sorted_desc, double b);

/// Upper bound on the expected support size for i.i.d. U[l, u] inputs:
/// sqrt(2b(n+1)/(u-l) + 1/4) + 1/2, capped at n.
double expected_support_bound(std::size_t n, double b, double l, double u);

struct SparsityCertificate {
  // Normal-approximation interval for |{i : d_i > t}|.
  double interval_low = 0.0;
  double interval_high = 0.0;
  // P(interval) = 2 Phi(q) - 1.
  double interval_probability = 0.0;
  // Chebyshev lower bound on P(tau > t | |I_t| = interval_low).
  double conditional_bound = 0.0;
  // Product of the two: lower bound on P(tau > t).
  double probability_lower_bound = 0.0;
};

/// Lower bound on P(tau > t) for n i.i.d. draws whose right tail beyond t has
/// mass tail_prob, mean tail_mean and variance tail_var; q sets the width of
/// the binomial interval in standard deviations.
SparsityCertificate sparsity_certificate(std::size_t n, double t, double tail_prob,
                                         double tail_mean, double tail_var, double b, double q);

/// Same with q = sqrt(2 ln n).
SparsityCertificate sparsity_certificate(std::size_t n, double t, double tail_prob,
                                         double tail_mean, double tail_var, double b);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace simplexproj
