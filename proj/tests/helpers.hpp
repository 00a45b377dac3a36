// Shared fixtures and independent oracles for the test suites. Everything
// here recomputes quantities from first principles so tests stay decoupled
// from the library's own computation paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fqr/function_space.hpp"
#include "fqr/sample.hpp"
#include "fqr/simulation.hpp"

namespace testutil {

using fqr::Basis;
using fqr::Curve;
using fqr::Grid;
using fqr::Vector;

inline Curve random_curve(const Grid& grid, fqr::Rng& rng, double scale = 1.0) {
  Vector v(grid.count);
  for (int k = 0; k < grid.count; ++k) v[k] = scale * rng.gauss();
  return Curve(grid, std::move(v));
}

// Orthonormal basis under the trapezoid inner product, built by
// Gram-Schmidt on monomials. Exactly orthonormal in the discrete metric.
inline Basis gram_schmidt_basis(const Grid& grid, int dim) {
  Basis basis;
  basis.eigenvalues = Vector::Zero(dim);
  Vector t = grid.points();
  for (int k = 0; k < dim; ++k) {
    Vector v = t.array().pow(k);
    Curve c(grid, v);
    for (int j = 0; j < k; ++j) {
      double coef = fqr::inner_product(c, basis.functions[j]);
      c = fqr::subtract(c, fqr::scale(basis.functions[j], coef));
    }
    double n = fqr::norm(c);
    basis.functions.push_back(fqr::scale(c, 1.0 / n));
  }
  return basis;
}

// Weighted empirical CDF with the midpoint convention at atoms.
inline double weighted_ecdf(const std::vector<double>& values,
                            const std::vector<double>& weights, double y,
                            double atol = 0.0) {
  double below = 0.0, at = 0.0, total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += weights[i];
    if (values[i] < y - atol) below += weights[i];
    else if (std::abs(values[i] - y) <= atol) at += weights[i];
  }
  return (below + 0.5 * at) / total;
}

// Weighted alpha-quantile of scalar data: the smallest value whose
// cumulative normalized weight reaches alpha.
inline double weighted_quantile(std::vector<double> values,
                                std::vector<double> weights, double alpha) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double acc = 0.0;
  for (std::size_t k : order) {
    acc += weights[k];
    if (acc >= alpha * total - 1e-12) return values[k];
  }
  return values[order.back()];
}

// Direct evaluation of the solver objective on raw coordinates.
inline double objective_oracle(const std::vector<Vector>& responses,
                               const std::vector<double>& weights,
                               const Vector& tau, const Vector& q) {
  double total = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    acc += weights[i] * (q - responses[i]).norm();
    total += weights[i];
  }
  return acc / total - tau.dot(q);
}

// Brute-force grid search over [lo,hi]^2 at the given resolution.
inline Vector grid_search_2d(const std::vector<Vector>& responses,
                             const std::vector<double>& weights,
                             const Vector& tau, double lo, double hi,
                             double resolution) {
  Vector best(2);
  double best_obj = std::numeric_limits<double>::infinity();
  int steps = static_cast<int>(std::lround((hi - lo) / resolution));
  Vector q(2);
  for (int a = 0; a <= steps; ++a) {
    q[0] = lo + a * resolution;
    for (int b = 0; b <= steps; ++b) {
      q[1] = lo + b * resolution;
      double obj = objective_oracle(responses, weights, tau, q);
      if (obj < best_obj) {
        best_obj = obj;
        best = q;
      }
    }
  }
  return best;
}

// Spearman rank correlation; ranks are midranks under exact ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
      double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = mid;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
  double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    num += (ra[k] - ma) * (rb[k] - mb);
    da += (ra[k] - ma) * (ra[k] - ma);
    db += (rb[k] - mb) * (rb[k] - mb);
  }
  if (da == 0.0 || db == 0.0) return 0.0;  // constant input: no trend
  return num / std::sqrt(da * db);
}

// Scalar-response sample on a one-point grid with all covariates at x0.
inline fqr::FunctionalSample scalar_sample(const std::vector<double>& responses) {
  fqr::FunctionalSample sample;
  Grid g = fqr::scalar_grid();
  for (double y : responses) {
    sample.covariates.push_back(Curve::constant(g, 0.0));
    sample.responses.push_back(Curve::constant(g, y));
  }
  return sample;
}

}  // namespace testutil
