#include "fqr/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace fqr {

CovarianceEstimate estimate_conditional_covariance(const FunctionalSample& sample,
                                                   const Curve& x0, double h,
                                                   const KernelSpec& spec) {
  sample.validate();
  WeightVector wv = compute_weights(x0, sample.covariates, h, spec);
  int positive = 0;
  for (Eigen::Index i = 0; i < wv.weights.size(); ++i)
    if (wv.weights[i] > 0.0) ++positive;
  if (positive < 2)
    throw DegenerateNeighborhood("conditional covariance needs at least 2 "
                                 "observations with positive weight");

  const Grid& g = sample.responses.front().grid;
  const int n = sample.size();
  const int m = g.count;

  Vector mean = Vector::Zero(m);
  for (int i = 0; i < n; ++i) mean += wv.weights[i] * sample.responses[i].values;
  mean /= wv.total;

  Matrix cov = Matrix::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    if (wv.weights[i] == 0.0) continue;
    Vector centered = sample.responses[i].values - mean;
    cov.noalias() += wv.weights[i] * (centered * centered.transpose());
  }
  cov /= wv.total;
  cov = 0.5 * (cov + cov.transpose());

  return CovarianceEstimate{g, std::move(cov), Curve(g, std::move(mean))};
}

namespace {

// Symmetrized discretization of the integral operator: with quadrature
// weights W, eigenpairs of W^{1/2} C W^{1/2} give L2-orthonormal
// eigenfunctions v = W^{-1/2} u and the operator's eigenvalues.
void operator_eigen(const CovarianceEstimate& cov, Vector& eigenvalues,
                    Matrix& eigenfunctions) {
  Vector w = cov.grid.quad_weights();
  Vector ws = w.array().sqrt();
  Matrix b = ws.asDiagonal() * cov.matrix * ws.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  // Eigen sorts ascending; flip to nonincreasing.
  const int m = cov.grid.count;
  eigenvalues.resize(m);
  eigenfunctions.resize(m, m);
  for (int k = 0; k < m; ++k) {
    eigenvalues[k] = es.eigenvalues()[m - 1 - k];
    eigenfunctions.col(k) =
        es.eigenvectors().col(m - 1 - k).cwiseQuotient(ws);
  }
}

}  // namespace

Basis eigenbasis(const CovarianceEstimate& cov, int d) {
  if (d < 1 || d > cov.grid.count)
    throw DimensionMismatch("basis dimension " + std::to_string(d) +
                            " out of range for grid count " +
                            std::to_string(cov.grid.count));
  Vector vals;
  Matrix funcs;
  operator_eigen(cov, vals, funcs);

  Basis basis;
  basis.eigenvalues.resize(d);
  basis.functions.reserve(d);
  for (int k = 0; k < d; ++k) {
    basis.eigenvalues[k] = vals[k];
    Vector f = funcs.col(k);
    Eigen::Index imax;
    f.cwiseAbs().maxCoeff(&imax);
    if (f[imax] < 0.0) f = -f;
    basis.functions.emplace_back(cov.grid, std::move(f));
  }
  return basis;
}

int choose_dn(int neighborhood_count) {
  if (neighborhood_count < 1)
    throw InvalidArgument("neighborhood count must be positive");
  double m = static_cast<double>(neighborhood_count);
  double d = std::floor(std::min(std::sqrt(m), 2.0 * std::cbrt(m)));
  return std::max(1, static_cast<int>(d));
}

int effective_dimension(const CovarianceEstimate& cov, int neighborhood_count) {
  Vector vals;
  Matrix funcs;
  operator_eigen(cov, vals, funcs);
  double lambda_max = vals.size() > 0 ? vals[0] : 0.0;
  int positive = 0;
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (vals[k] > 1e-12 * lambda_max) ++positive;
  positive = std::max(1, positive);
  return std::min({choose_dn(neighborhood_count), cov.grid.count, positive});
}

Curve truncate_response(const Curve& y, const Basis& basis) {
  return reconstruct(project(y, basis), basis);
}

}  // namespace fqr
