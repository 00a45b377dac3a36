#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqr/quantile_solver.hpp"

namespace fqr {

/// Which predictor the leave-one-out score uses. The spread between these
/// is small on typical data; the spatial median is the default.
enum class CVPredictor { SpatialMedian, PointwiseMedian, Mean };

struct CVConfig {
  CVPredictor predictor = CVPredictor::SpatialMedian;
  int minNeighbors = 3;
  SolverConfig solver;
};

struct CVResult {
  double hOpt = 0.0;
  std::vector<std::pair<double, double>> scores;  // feasible (h, score)
  std::vector<double> infeasible;
};

/// Conditional predictor at x0 fitted on the sample minus observation i.
/// Throws DegenerateNeighborhood when fewer than minNeighbors remain in the
/// leave-one-out neighborhood.
Curve loo_median(const FunctionalSample& sample, int i, const Curve& x0, double h,
                 const KernelSpec& spec, const CVConfig& config = {});

/// Mean leave-one-out prediction error; empty when any fold is infeasible.
std::optional<double> cv_score(const FunctionalSample& sample, double h,
                               const KernelSpec& spec, const CVConfig& config = {});

/// Candidate grid from the pairwise covariate-distance distribution:
/// deciles 0.1..0.9 plus the maximum.
std::vector<double> auto_bandwidth_grid(const FunctionalSample& sample);

CVResult select_bandwidth(const FunctionalSample& sample,
                          const std::vector<double>& candidates,
                          const KernelSpec& spec, const CVConfig& config = {});

}  // namespace fqr
