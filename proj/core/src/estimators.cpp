#include "fqr/estimators.hpp"

namespace fqr {

Curve unit_direction(const Curve& y, const Curve& yi) {
  Curve diff = subtract(y, yi);
  double r = norm(diff);
  if (r <= 1e-12 * (1.0 + norm(y))) return Curve::zero(y.grid);
  return scale(diff, 1.0 / r);
}

Curve spatial_distribution_hat(const Curve& y, const Curve& x0,
                               const FunctionalSample& sample, double h,
                               const KernelSpec& spec) {
  sample.validate();
  WeightVector wv = compute_weights(x0, sample.covariates, h, spec);
  Vector acc = Vector::Zero(y.grid.count);
  for (int i = 0; i < sample.size(); ++i) {
    if (wv.weights[i] == 0.0) continue;
    acc += wv.weights[i] * unit_direction(y, sample.responses[i]).values;
  }
  return Curve(y.grid, acc / wv.total);
}

double spatial_depth_hat(const Curve& y, const Curve& x0,
                         const FunctionalSample& sample, double h,
                         const KernelSpec& spec) {
  return 1.0 - norm(spatial_distribution_hat(y, x0, sample, h, spec));
}

}  // namespace fqr
