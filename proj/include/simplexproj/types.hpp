#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexproj {

/// Default relative tolerance used by KKT checks and oracle comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// Thrown when an input violates a problem precondition (empty vector,
/// non-finite entry, non-positive scale or weight, mismatched lengths).
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computed projection fails its own consistency check.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-owning view of a projection problem: project d onto
/// { v >= 0 : sum(v) = b }. Construction checks only the O(1) preconditions.
struct InstanceView {
  std::span<const double> d;
  double b = 1.0;

  InstanceView() = default;
  InstanceView(std::span<const double> values, double scale);

  std::size_t size() const noexcept { return d.size(); }
};

/// Owning problem instance. The constructor validates every entry.
class ProjectionInstance {
 public:
  ProjectionInstance(std::vector<double> d, double b);

  const std::vector<double>& d() const noexcept { return d_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return d_.size(); }

  InstanceView view() const { return InstanceView(d_, b_); }
  operator InstanceView() const { return view(); }  // NOLINT(google-explicit-constructor)

 private:
  std::vector<double> d_;
  double b_;
};

/// Sparse solution: v_i = values[j] for i = indices[j], zero elsewhere.
struct SparseProjection {
  double tau = 0.0;
  std::vector<std::size_t> indices;
  std::vector<double> values;

  std::size_t support() const noexcept { return indices.size(); }
  std::vector<double> to_dense(std::size_t n) const;
};

/// Work counters. One count per candidate element touched per pass.
struct SolverStats {
  std::size_t elements_scanned = 0;
  std::size_t outer_iterations = 0;
  std::size_t reduced_size = 0;
  // Set by the distributed methods when the survivors exceed 90% of n.
  bool dense_fallback = false;
  // Pivot value and candidate-set size at the end of each outer pass.
  std::vector<double> pivots;
  std::vector<std::size_t> pass_sizes;

  void merge_counts(const SolverStats& other);
};

struct ProjectionResult {
  SparseProjection projection;
  SolverStats stats;
};

struct WeightedView {
  std::span<const double> d;
  std::span<const double> w;
  double b = 1.0;

  WeightedView() = default;
  WeightedView(std::span<const double> values, std::span<const double> weights, double scale);

  std::size_t size() const noexcept { return d.size(); }
};

/// Weighted problem: project d onto { v >= 0 : sum(w_i v_i) = b }, w > 0.
class WeightedInstance {
 public:
  WeightedInstance(std::vector<double> d, std::vector<double> w, double b);

  const std::vector<double>& d() const noexcept { return d_; }
  const std::vector<double>& w() const noexcept { return w_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return d_.size(); }

  WeightedView view() const { return WeightedView(d_, w_, b_); }
  operator WeightedView() const { return view(); }  // NOLINT(google-explicit-constructor)

 private:
  std::vector<double> d_;
  std::vector<double> w_;
  double b_;
};

/// Full O(n) validation of a view (finite entries).
void validate(InstanceView inst);
void validate(WeightedView inst);

}  // namespace simplexproj
