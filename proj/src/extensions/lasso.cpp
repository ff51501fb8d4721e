#include "simplexproj/lasso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "simplexproj/l1_ball.hpp"
#include "simplexproj/summation.hpp"

namespace simplexproj {

void SparseMatrix::add_row(std::span<const std::size_t> cols_in_row,
                           std::span<const double> vals_in_row) {
  if (cols_in_row.size() != vals_in_row.size()) {
    throw InvalidInstance("row columns and values differ in length");
  }
  for (std::size_t c : cols_in_row) {
    if (c >= cols) throw InvalidInstance("column index out of range");
  }
  col.insert(col.end(), cols_in_row.begin(), cols_in_row.end());
  val.insert(val.end(), vals_in_row.begin(), vals_in_row.end());
  row_ptr.push_back(col.size());
  ++rows;
}

void LassoConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInstance("step size must be positive");
  if (batch == 0) throw InvalidInstance("batch size must be at least 1");
  if (iterations == 0) throw InvalidInstance("iteration count must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInstance("radius must be positive");
}

std::vector<double> sparse_uniform_start(std::size_t n, double rate, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution zero(rate);
  std::vector<double> x(n);
  for (auto& xi : x) xi = zero(rng) ? 0.0 : unit(rng);
  return x;
}

LassoTrace lasso_pgd_minibatch(const LassoData& data, const LassoConfig& cfg,
                               const SimplexBackend& backend, std::vector<double> x0) {
  cfg.validate();
  const SparseMatrix& a = data.a;
  if (data.labels.size() != a.rows) throw InvalidInstance("label count differs from row count");
  if (x0.size() != a.cols) throw InvalidInstance("iterate length differs from column count");
  if (a.rows == 0) throw InvalidInstance("design matrix has no rows");

  const std::size_t m = std::min(cfg.batch, a.rows);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> rows(a.rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<std::size_t> batch(m);

  LassoTrace trace;
  std::vector<double> x = std::move(x0);
  std::vector<double> grad(a.cols);
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    std::sample(rows.begin(), rows.end(), batch.begin(), m, rng);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t r : batch) {
      CompensatedSum ax;
      for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) ax.add(a.val[p] * x[a.col[p]]);
      const double residual = ax.value() - data.labels[r];
      for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
        grad[a.col[p]] += 2.0 * a.val[p] * residual;
      }
    }
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= cfg.alpha * grad[j];

    const auto start = std::chrono::steady_clock::now();
    const BallProjection proj = project_l1_ball(InstanceView(x, cfg.radius), backend);
    const auto stop = std::chrono::steady_clock::now();
    if (!proj.interior) {
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t j = 0; j < proj.projection.indices.size(); ++j) {
        x[proj.projection.indices[j]] = proj.projection.values[j];
      }
    }
    trace.projection_ns.push_back(
        static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
    CompensatedSum norm;
    std::size_t nonzero = 0;
    for (double xi : x) {
      norm.add(std::fabs(xi));
      nonzero += xi != 0.0 ? 1 : 0;
    }
    trace.l1_norms.push_back(norm.value());
    trace.support.push_back(nonzero);
  }
  trace.x = std::move(x);
  return trace;
}

}  // namespace simplexproj
