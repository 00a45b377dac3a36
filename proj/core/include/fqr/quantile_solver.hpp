#pragma once

#include <optional>

#include "fqr/covariance.hpp"
#include "fqr/kernel.hpp"
#include "fqr/sample.hpp"

namespace fqr {

/// Working state of a conditional quantile computation: everything lives in
/// the coordinates of an orthonormal basis, so Euclidean norms and inner
/// products below are the L2 quantities.
struct QuantileProblem {
  CoefVector tau;        // quantile direction, Euclidean norm < 1
  Matrix responses;      // n x d, truncated responses in basis coordinates
  WeightVector weights;  // kernel weights, total > 0
  Basis basis;
};

struct SolverConfig {
  int maxIterations = 200;
  double stepTol = 1e-8;
  double gradTol = 1e-8;
  double coincidenceTol = 1e-10;
};

enum class SolveStatus { CandidatePoint, NewtonConverged, MaxIterations };

struct QuantileFit {
  CoefVector point;
  Curve curve;
  SolveStatus status = SolveStatus::MaxIterations;
  int candidateIndex = -1;  // set when status == CandidatePoint
  int iterations = 0;
  double finalGradientNorm = 0.0;
  double objective = 0.0;
};

/// The kernel-weighted objective whose minimizer over the basis span is the
/// conditional sample quantile:
///   sum_i w_i ||q - Y_i|| / sum_i w_i  -  <tau, q>.
double objective(const QuantileProblem& problem, const CoefVector& q);

/// Gradient of the objective away from the response points:
///   sum_i w_i (q - Y_i)/||q - Y_i|| / sum_i w_i  -  tau.
/// Throws NotDifferentiable when q is within tol of a response row.
CoefVector gradient(const QuantileProblem& problem, const CoefVector& q,
                    double tol = 1e-10);

/// Subgradient optimality test for response i being itself the quantile:
///   || sum_{j not in J_i} w_j [ (Y_i - Y_j)/||Y_i - Y_j|| - tau ] ||
///     <= (1 + ||tau||) * sum_{j in J_i} w_j,
/// where J_i collects responses coinciding with Y_i within tol.
bool candidate_check(const QuantileProblem& problem, int i, double tol = 1e-10);

/// One Newton step q - A^{-1} V with
///   V = sum_i w_i [ (q - Y_i)/r_i - tau ],
///   A = sum_i w_i [ I/r_i - (q - Y_i)(q - Y_i)^T / r_i^3 ],
/// solved by Cholesky with a ridge fallback when A is near-singular.
CoefVector newton_step(const QuantileProblem& problem, const CoefVector& q,
                       double tol = 1e-10);

/// Full procedure: check every distinct positive-weight response against the
/// optimality condition first, then run the damped Newton iteration.
QuantileFit solve(const QuantileProblem& problem, const SolverConfig& config = {},
                  std::optional<CoefVector> initial = std::nullopt);

/// Per-evaluation-point estimates shared by quantile fits at one x:
/// kernel weights, neighborhood size, the conditional eigenbasis, and the
/// centered response coordinates. Quantile curves are reconstructed as
/// mean + sum_k point_k e_k, so identical responses reproduce themselves
/// even when the covariance (and hence the basis) is degenerate.
struct LocalModel {
  WeightVector weights;
  int neighborhoodCount = 0;
  Curve mean;
  Basis basis;
  Matrix coords;  // n x d, rows are project(Y_i - mean, basis)
};

LocalModel build_local_model(const FunctionalSample& sample, const Curve& x0,
                             double h, const KernelSpec& spec);

QuantileProblem make_problem(const LocalModel& model, CoefVector tau);

/// tau = scale * e_1 in basis coordinates.
CoefVector tau_first_component(const LocalModel& model, double scale);

/// Convenience: fit the conditional tau-quantile at x0, reconstructing the
/// curve as mean + basis expansion of the solution coordinates.
QuantileFit fit_conditional_quantile(const FunctionalSample& sample,
                                     const Curve& x0, const CoefVector& tau_coords,
                                     double h, const KernelSpec& spec,
                                     const SolverConfig& config = {});

QuantileFit finish_fit(const LocalModel& model, QuantileFit fit);

}  // namespace fqr
