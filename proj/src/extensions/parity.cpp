#include "simplexproj/parity.hpp"

#include <algorithm>
#include <cmath>

#include "simplexproj/kernels.hpp"

namespace simplexproj {

std::vector<std::uint8_t> parity_signs(std::span<const double> d) {
  std::vector<std::uint8_t> f(d.size());
  std::size_t ones = 0;
  std::size_t smallest = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    f[i] = d[i] >= 0.0 ? 1 : 0;
    ones += f[i];
    if (std::fabs(d[i]) < std::fabs(d[smallest])) smallest = i;
  }
  if (ones % 2 == 0 && !d.empty()) f[smallest] ^= 1;
  return f;
}

ParityProjection project_parity_polytope(std::span<const double> d, const SimplexBackend& backend) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidInstance("parity polytope projection needs n >= 2");
  for (double x : d) {
    if (!std::isfinite(x)) throw InvalidInstance("parity polytope input must be finite");
  }

  const auto f = parity_signs(d);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f[i] ? -d[i] : d[i];

  ParityProjection out;
  const double half_n = static_cast<double>(n) / 2.0;
  if (kernels::clamp_sum(v, -0.5, 0.5) >= 1.0 - half_n) {
    out.box_only = true;
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.x[i] = std::clamp(d[i], -0.5, 0.5);
    return out;
  }

  std::vector<double> shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = v[i] + 0.5;
  const ProjectionResult res = backend(InstanceView(shifted, 1.0));
  std::vector<double> u(n, -0.5);
  for (std::size_t j = 0; j < res.projection.indices.size(); ++j) {
    u[res.projection.indices[j]] = res.projection.values[j] - 0.5;
  }
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = f[i] ? -u[i] : u[i];
  return out;
}

ParityProjection project_parity_polytope(std::span<const double> d) {
  return project_parity_polytope(d, make_backend(Algorithm::condat));
}

}  // namespace simplexproj
