#include "simplexproj/l1_ball.hpp"

#include <cmath>

#include "finalize.hpp"
#include "simplexproj/kernels.hpp"

namespace simplexproj {

BallProjection project_l1_ball(InstanceView inst, const SimplexBackend& backend) {
  const std::size_t n = inst.size();
  detail::check_finite(inst);
  BallProjection out;
  if (kernels::abs_sum(inst.d) <= inst.b) {
    out.interior = true;
    out.projection.indices.resize(n);
    out.projection.values.assign(inst.d.begin(), inst.d.end());
    for (std::size_t i = 0; i < n; ++i) out.projection.indices[i] = i;
    return out;
  }

  std::vector<std::size_t> nonzero;
  std::vector<double> magnitude;
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.d[i] != 0.0) {
      nonzero.push_back(i);
      magnitude.push_back(std::fabs(inst.d[i]));
    }
  }
  ProjectionResult res = backend(InstanceView(magnitude, inst.b));
  out.stats = std::move(res.stats);
  out.projection = std::move(res.projection);
  for (std::size_t j = 0; j < out.projection.indices.size(); ++j) {
    const std::size_t i = nonzero[out.projection.indices[j]];
    out.projection.indices[j] = i;
    if (inst.d[i] < 0.0) out.projection.values[j] = -out.projection.values[j];
  }
  return out;
}

BallProjection project_l1_ball(InstanceView inst) {
  return project_l1_ball(inst, make_backend(Algorithm::condat));
}

}  // namespace simplexproj
