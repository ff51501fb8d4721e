#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simplexproj/types.hpp"

namespace simplexproj {

/// How pivot_partition chooses the next pivot.
struct PivotRule {
  enum class Kind { random, median, michelot };

  Kind kind = Kind::median;
  std::uint64_t seed = 0;  // random only

  static PivotRule random(std::uint64_t seed) { return {Kind::random, seed}; }
  static PivotRule median() { return {Kind::median, 0}; }
  static PivotRule michelot() { return {Kind::michelot, 0}; }
};

/// Bucket method tuning: c buckets per round, absolute pivot tolerance D.
/// The number of rounds is T = ceil(log_c(R / D)), R = max(d) - min(d).
struct BucketParams {
  std::size_t buckets = 64;
  // Non-positive means the default 1e-9 * max(1, R).
  double tolerance = 0.0;

  static std::size_t rounds(std::size_t buckets, double range, double tolerance);
};

/// Output of the Filter preprocessing step.
struct FilterResult {
  std::vector<std::size_t> indices;  // ascending, contains the active set
  double pivot = 0.0;                // mean(d) - b/n <= pivot <= tau
  SolverStats stats;
};

/// Full descending sort followed by a compensated scan for kappa.
ProjectionResult sort_scan(InstanceView inst);

/// Pivot and Partition. Shrinks the candidate set around a pivot drawn by
/// the rule; entries above an accepted pivot are committed as active.
ProjectionResult pivot_partition(InstanceView inst, PivotRule rule);

/// Michelot's fixed-point iteration. stats.pivots holds the non-decreasing
/// pivot sequence and stats.pass_sizes the candidate set size after each pass.
ProjectionResult michelot(InstanceView inst);

/// Condat's single-pass Filter with a waiting list.
FilterResult filter(InstanceView inst);

/// Filter followed by Michelot-style passes that update the pivot on every
/// removal. stats.elements_scanned excludes the Filter pass.
ProjectionResult condat(InstanceView inst);

/// Condat's main loop started from a candidate superset of the active set
/// (shared with the parallel variant, which supplies a distributed Filter).
ProjectionResult condat_from(InstanceView inst, std::vector<std::size_t> candidates);

struct BucketEstimate {
  double tau_bar = 0.0;                  // |tau_bar - tau| <= D, tau_bar <= tau
  std::vector<std::size_t> candidates;   // superset of the active set
  double tolerance = 0.0;                // the D that was applied
  std::size_t max_rounds = 0;            // T
  SolverStats stats;
};

/// Bucket rounds only: returns the tolerance-limited pivot estimate.
BucketEstimate bucket_estimate(InstanceView inst, BucketParams params = {});

/// Bucket method; tau is recomputed exactly from {d_i > tau_bar}.
ProjectionResult bucket(InstanceView inst, BucketParams params = {});

}  // namespace simplexproj
