#pragma once

#include "fqr/estimators.hpp"
#include "fqr/quantile_solver.hpp"

namespace fqr {

/// Depth ordering of the responses at one evaluation point, the cutoff i_p
/// accumulating conditional mass p, and the diameter D1 of the selected set.
struct DepthSetResult {
  std::vector<int> orderedIndices;  // positive-weight points, depth nonincreasing
  Vector depths;                    // aligned to orderedIndices
  int cutoff = 0;                   // i_p, 1-based count of selected points
  double p = 0.0;
  double d1 = 0.0;
};

/// Spread values per covariate curve, aligned with the rank of the covariate
/// by L2 norm. NaN marks evaluation points where the fit failed.
struct SpreadProfile {
  std::vector<int> covariateRanks;
  Vector d1Values;
  Vector d2Values;
};

/// Indices of positive-weight responses sorted by conditional spatial depth,
/// nonincreasing; ties broken by ascending original index.
std::pair<std::vector<int>, Vector> order_by_depth(const FunctionalSample& sample,
                                                   const Curve& x0, double h,
                                                   const KernelSpec& spec);

DepthSetResult maximal_depth_set(const FunctionalSample& sample, const Curve& x0,
                                 double p, double h, const KernelSpec& spec);

/// Max pairwise L2 distance among the selected responses.
double d1_spread(const DepthSetResult& result, const FunctionalSample& sample);

/// || Q_hat(tau|x) - Q_hat(-tau|x) ||.
double d2_spread(const FunctionalSample& sample, const Curve& x0,
                 const CoefVector& tau, double h, const KernelSpec& spec,
                 const SolverConfig& config = {});

/// D1(p|X_i) and D2(0.5 e_1|X_i) for every covariate curve as evaluation
/// point, aligned with covariate-norm ranks. Failures become NaN entries.
SpreadProfile spread_profile(const FunctionalSample& sample, double p, double h,
                             const KernelSpec& spec,
                             const SolverConfig& config = {});

}  // namespace fqr
