#pragma once

#include <vector>

#include "fqr/function_space.hpp"

namespace fqr {

/// Kernel on [0,1]. Indicator is the default used throughout the data
/// analysis; the decreasing Epanechnikov variant is offered for
/// sensitivity checks (any bounded nonincreasing kernel on [0,1] works).
enum class KernelKind { Indicator, EpanechnikovDecreasing };

struct KernelSpec {
  KernelKind kind = KernelKind::Indicator;
};

struct WeightVector {
  Vector weights;
  double total = 0.0;
};

double evaluate_kernel(const KernelSpec& spec, double u);

/// w_i = K(d(x0, X_i)/h). Throws EmptyNeighborhood when every weight is 0.
WeightVector compute_weights(const Curve& x0, const std::vector<Curve>& covariates,
                             double h, const KernelSpec& spec);

/// Indices i with d(x0, X_i) <= h. May be empty.
std::vector<int> neighborhood(const Curve& x0, const std::vector<Curve>& covariates,
                              double h);

}  // namespace fqr
