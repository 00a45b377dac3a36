#pragma once

#include "fqr/kernel.hpp"
#include "fqr/sample.hpp"

namespace fqr {

/// (y - yi) / ||y - yi||, with the convention that the zero curve is
/// returned when ||y - yi|| is below 1e-12 * (1 + ||y||).
Curve unit_direction(const Curve& y, const Curve& yi);

/// Kernel estimate of the conditional spatial distribution:
/// sum_i w_i (y - Y_i)/||y - Y_i|| / sum_i w_i.
Curve spatial_distribution_hat(const Curve& y, const Curve& x0,
                               const FunctionalSample& sample, double h,
                               const KernelSpec& spec);

/// Conditional spatial depth estimate 1 - ||S_hat(y|x)||, in [0, 1].
double spatial_depth_hat(const Curve& y, const Curve& x0,
                         const FunctionalSample& sample, double h,
                         const KernelSpec& spec);

}  // namespace fqr
