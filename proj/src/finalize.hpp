#pragma once

#include <cstddef>
#include <vector>

#include "simplexproj/types.hpp"

namespace simplexproj::detail {

/// Rejects non-finite entries. One vectorized pass; the slow scan only runs
/// to name the offending entry.
void check_finite(InstanceView inst);
void check_finite(WeightedView inst);

/// Turns a superset of the active set into the exact projection: compensated
/// sum over the candidates in ascending index order, then drop entries at or
/// below the pivot until nothing changes. Any two solvers that hand over the
/// same active set get a bitwise-identical tau.
SparseProjection finalize(InstanceView inst, std::vector<std::size_t> candidates);

/// Weighted counterpart: tau = (sum w_i d_i - b) / sum w_i^2 over the
/// candidates, candidates kept while d_i / w_i > tau.
SparseProjection finalize_weighted(WeightedView inst, std::vector<std::size_t> candidates);

}  // namespace simplexproj::detail
