#pragma once

#include "simplexproj/solvers.hpp"
#include "simplexproj/types.hpp"

namespace simplexproj {

/// Projection onto { v : sum |v_i| <= b }. Values carry the signs of d.
struct BallProjection {
  SparseProjection projection;  // tau is 0 for interior points
  bool interior = false;
  SolverStats stats;
};

/// Interior points come back unchanged (every index listed, values copied).
/// Otherwise the nonzero |d_i| are projected onto the b-simplex by the backend.
BallProjection project_l1_ball(InstanceView inst, const SimplexBackend& backend);
BallProjection project_l1_ball(InstanceView inst);

}  // namespace simplexproj
