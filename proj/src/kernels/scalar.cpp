#include "simplexproj/kernels.hpp"
#include "simplexproj/summation.hpp"

#include <algorithm>
#include <cmath>

namespace simplexproj::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
  return acc.value();
}

double abs_sum_scalar(const double* x, std::size_t n) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::fabs(x[i]));
  return acc.value();
}

SumCount sum_count_above_scalar(const double* x, std::size_t n, double t) {
  CompensatedSum acc;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > t) {
      acc.add(x[i]);
      ++count;
    }
  }
  return {acc.value(), count};
}

MinMax min_max_scalar(const double* x, std::size_t n) {
  MinMax r{x[0], x[0]};
  for (std::size_t i = 1; i < n; ++i) {
    r.min = std::min(r.min, x[i]);
    r.max = std::max(r.max, x[i]);
  }
  return r;
}

SumCount compact_above_scalar(const double* vals, const std::size_t* idx, std::size_t n, double t,
                              double* out_vals, std::size_t* out_idx) {
  CompensatedSum acc;
  std::size_t w = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double v = vals[r];
    if (v > t) {
      acc.add(v);
      out_vals[w] = v;
      out_idx[w] = idx[r];
      ++w;
    }
  }
  return {acc.value(), w};
}

double clamp_sum_scalar(const double* x, std::size_t n, double lo, double hi) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::clamp(x[i], lo, hi));
  return acc.value();
}

bool all_finite_scalar(const double* x, std::size_t n) {
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) ok &= std::isfinite(x[i]);
  return ok;
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{
    Isa::scalar,          "scalar",       &sum_scalar,          &abs_sum_scalar,
    &sum_count_above_scalar, &min_max_scalar, &compact_above_scalar, &clamp_sum_scalar,
    &all_finite_scalar,
};
}  // namespace detail

}  // namespace simplexproj::kernels
