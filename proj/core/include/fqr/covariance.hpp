#pragma once

#include "fqr/kernel.hpp"
#include "fqr/sample.hpp"

namespace fqr {

/// Kernel-weighted conditional covariance of the response at an evaluation
/// point: mean(t) and the matrix C(s,t) on the response grid.
struct CovarianceEstimate {
  Grid grid;
  Matrix matrix;
  Curve mean;
};

CovarianceEstimate estimate_conditional_covariance(const FunctionalSample& sample,
                                                   const Curve& x0, double h,
                                                   const KernelSpec& spec);

/// Top-d eigenpairs of the integral operator with kernel C(s,t), discretized
/// with the grid's quadrature weights. Eigenfunctions are L2-orthonormal,
/// eigenvalues sorted nonincreasing. Sign convention: the entry of largest
/// absolute value of each eigenfunction is positive.
Basis eigenbasis(const CovarianceEstimate& cov, int d);

/// d_n = floor(min(sqrt(m), 2 m^(1/3))), clamped to >= 1, for neighborhood
/// cardinality m.
int choose_dn(int neighborhood_count);

/// Cap on the usable basis dimension: choose_dn(m), the grid size, and the
/// number of eigenvalues above 1e-12 * lambda_max.
int effective_dimension(const CovarianceEstimate& cov, int neighborhood_count);

/// Projection of y onto the span of the basis, reconstructed as a curve.
Curve truncate_response(const Curve& y, const Basis& basis);

}  // namespace fqr
