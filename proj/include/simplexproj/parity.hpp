#pragma once

// Centered parity polytope: the convex hull of the even-weight 0/1 vectors,
// shifted by -1/2 in every coordinate.

#include <cstdint>
#include <span>
#include <vector>

#include "simplexproj/solvers.hpp"

namespace simplexproj {

/// f_i = 1 when d_i >= 0, with the entry of smallest |d_i| (lowest index on
/// ties) flipped when the count is even. The returned pattern has odd weight.
std::vector<std::uint8_t> parity_signs(std::span<const double> d);

struct ParityProjection {
  std::vector<double> x;
  // True when the box projection already lies in the polytope.
  bool box_only = false;
};

/// Euclidean projection onto the centered parity polytope. Requires n >= 2.
ParityProjection project_parity_polytope(std::span<const double> d, const SimplexBackend& backend);
ParityProjection project_parity_polytope(std::span<const double> d);

}  // namespace simplexproj
