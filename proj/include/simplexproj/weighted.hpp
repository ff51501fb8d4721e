#pragma once

// Weighted simplex { v >= 0 : sum w_i v_i = b }. The solution is
// v_i = max(d_i - w_i tau, 0) and i is active when d_i / w_i > tau.

#include <cstddef>
#include <string>
#include <vector>

#include "simplexproj/l1_ball.hpp"
#include "simplexproj/serial.hpp"
#include "simplexproj/types.hpp"

namespace simplexproj {

ProjectionResult weighted_michelot(WeightedView inst);

/// Single pass over the ratios d_i / w_i with a waiting list.
FilterResult weighted_filter(WeightedView inst);

/// weighted_filter, then removal passes with the pivot updated on every removal.
ProjectionResult weighted_condat(WeightedView inst);
ProjectionResult weighted_condat_from(WeightedView inst, std::vector<std::size_t> candidates);

/// Parallel sort of the ratios and a prefix scan over the sorted order.
ProjectionResult weighted_sort_scan_parallel(WeightedView inst, std::size_t k);

enum class WeightedVariant { pivot, condat };

/// Local weighted solves on contiguous parts, then the same solver on the
/// locally active entries.
ProjectionResult distributed_weighted_project(WeightedView inst, std::size_t k,
                                              WeightedVariant variant);

/// { v : sum w_i |v_i| <= b }.
BallProjection project_weighted_l1_ball(WeightedView inst);

bool verify_weighted_kkt(WeightedView inst, const SparseProjection& proj,
                         double tol = kDefaultTolerance);
std::string explain_weighted_kkt(WeightedView inst, const SparseProjection& proj,
                                 double tol = kDefaultTolerance);

}  // namespace simplexproj
