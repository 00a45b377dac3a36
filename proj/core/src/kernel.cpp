#include "fqr/kernel.hpp"

namespace fqr {

double evaluate_kernel(const KernelSpec& spec, double u) {
  if (u < 0.0) throw InvalidArgument("kernel argument must be nonnegative");
  if (u > 1.0) return 0.0;
  switch (spec.kind) {
    case KernelKind::Indicator:
      return 1.0;
    case KernelKind::EpanechnikovDecreasing:
      return 0.75 * (1.0 - u * u);
  }
  return 0.0;
}

WeightVector compute_weights(const Curve& x0, const std::vector<Curve>& covariates,
                             double h, const KernelSpec& spec) {
  if (h <= 0.0) throw InvalidArgument("bandwidth must be positive");
  WeightVector out;
  out.weights.resize(static_cast<Eigen::Index>(covariates.size()));
  for (std::size_t i = 0; i < covariates.size(); ++i) {
    out.weights[static_cast<Eigen::Index>(i)] =
        evaluate_kernel(spec, distance(x0, covariates[i]) / h);
  }
  out.total = out.weights.sum();
  if (out.total <= 0.0) throw EmptyNeighborhood();
  return out;
}

std::vector<int> neighborhood(const Curve& x0, const std::vector<Curve>& covariates,
                              double h) {
  if (h < 0.0) throw InvalidArgument("bandwidth must be nonnegative");
  std::vector<int> idx;
  for (std::size_t i = 0; i < covariates.size(); ++i) {
    if (distance(x0, covariates[i]) <= h) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

}  // namespace fqr
