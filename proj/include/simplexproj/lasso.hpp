#pragma once

// Mini-batch projected gradient descent for the constrained Lasso
//   min ||A x - y||^2  subject to  ||x||_1 <= b.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "simplexproj/solvers.hpp"

namespace simplexproj {

/// Compressed sparse rows. Column indices are 0-based.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nnz() const noexcept { return val.size(); }
  /// Appends a row; entries must have col < cols.
  void add_row(std::span<const std::size_t> cols_in_row, std::span<const double> vals_in_row);
};

struct LassoData {
  SparseMatrix a;
  std::vector<double> labels;
};

struct LassoConfig {
  double alpha = 0.05;
  std::size_t batch = 128;
  std::size_t iterations = 10;
  double radius = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LassoTrace {
  std::vector<double> x;                      // final iterate
  std::vector<double> projection_ns;          // wall time of each projection
  std::vector<double> l1_norms;               // ||x_t||_1 after each step
  std::vector<std::size_t> support;           // nonzeros of x_t after each step
};

/// Sparse U[0,1] start: each coordinate is zero with probability rate.
std::vector<double> sparse_uniform_start(std::size_t n, double rate, std::uint64_t seed);

/// x <- proj(x - alpha * 2 A_S^T (A_S x - y_S)) with a fresh batch S of
/// min(batch, rows) rows drawn without replacement every iteration.
LassoTrace lasso_pgd_minibatch(const LassoData& data, const LassoConfig& cfg,
                               const SimplexBackend& backend, std::vector<double> x0);

}  // namespace simplexproj
