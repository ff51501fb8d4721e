#include "simplexproj/types.hpp"

#include <cmath>
#include <string>

namespace simplexproj {

InstanceView::InstanceView(std::span<const double> values, double scale) : d(values), b(scale) {
  if (d.empty()) throw InvalidInstance("projection instance must have at least one entry");
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInstance("scale b must be finite and positive");
}

ProjectionInstance::ProjectionInstance(std::vector<double> d, double b) : d_(std::move(d)), b_(b) {
  validate(InstanceView(d_, b_));
}

void validate(InstanceView inst) {
  const InstanceView checked(inst.d, inst.b);
  for (std::size_t i = 0; i < checked.d.size(); ++i) {
    if (!std::isfinite(checked.d[i])) {
      throw InvalidInstance("entry " + std::to_string(i) + " is not finite");
    }
  }
}

WeightedView::WeightedView(std::span<const double> values, std::span<const double> weights,
                           double scale)
    : d(values), w(weights), b(scale) {
  if (d.empty()) throw InvalidInstance("weighted instance must have at least one entry");
  if (d.size() != w.size()) throw InvalidInstance("values and weights differ in length");
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInstance("scale b must be finite and positive");
}

WeightedInstance::WeightedInstance(std::vector<double> d, std::vector<double> w, double b)
    : d_(std::move(d)), w_(std::move(w)), b_(b) {
  validate(WeightedView(d_, w_, b_));
}

void validate(WeightedView inst) {
  const WeightedView checked(inst.d, inst.w, inst.b);
  for (std::size_t i = 0; i < checked.d.size(); ++i) {
    if (!std::isfinite(checked.d[i])) {
      throw InvalidInstance("entry " + std::to_string(i) + " is not finite");
    }
    if (!(checked.w[i] > 0.0) || !std::isfinite(checked.w[i])) {
      throw InvalidInstance("weight " + std::to_string(i) + " must be finite and positive");
    }
  }
}

std::vector<double> SparseProjection::to_dense(std::size_t n) const {
  std::vector<double> v(n, 0.0);
  for (std::size_t j = 0; j < indices.size(); ++j) v.at(indices[j]) = values[j];
  return v;
}

void SolverStats::merge_counts(const SolverStats& other) {
  elements_scanned += other.elements_scanned;
  outer_iterations += other.outer_iterations;
}

}  // namespace simplexproj
