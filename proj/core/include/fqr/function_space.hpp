#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fqr/errors.hpp"

namespace fqr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Uniform sampling grid over a real interval [start, end].
///
/// count == 1 is allowed (with start == end) so that scalar responses can
/// be treated as curves on a one-point domain; the quadrature weight is 1
/// in that case and the L2 inner product reduces to the ordinary product.
struct Grid {
  double start = 0.0;
  double end = 1.0;
  int count = 2;

  Grid() = default;
  Grid(double start_, double end_, int count_);

  /// Grid spacing; 0 for a one-point grid.
  double dt() const { return count > 1 ? (end - start) / (count - 1) : 0.0; }

  Vector points() const;

  /// Trapezoid quadrature weights (dt/2, dt, ..., dt, dt/2); {1} for count==1.
  Vector quad_weights() const;

  bool operator==(const Grid& other) const = default;
};

/// A single scalar grid: the representation of a real-valued response.
inline Grid scalar_grid() { return Grid(0.0, 0.0, 1); }

/// Function sampled on a shared uniform grid.
struct Curve {
  Grid grid;
  Vector values;

  Curve() = default;
  Curve(Grid g, Vector v);

  static Curve zero(const Grid& g) { return Curve(g, Vector::Zero(g.count)); }
  static Curve constant(const Grid& g, double c) {
    return Curve(g, Vector::Constant(g.count, c));
  }
};

/// Coordinates of a curve in an orthonormal basis.
using CoefVector = Vector;

/// Orthonormal functions spanning the finite-dimensional space where sample
/// quantiles are computed, with the eigenvalues they were extracted with.
struct Basis {
  std::vector<Curve> functions;
  Vector eigenvalues;

  int dimension() const { return static_cast<int>(functions.size()); }
  const Grid& grid() const { return functions.front().grid; }
};

double inner_product(const Curve& f, const Curve& g);
double norm(const Curve& f);
double distance(const Curve& f, const Curve& g);

CoefVector project(const Curve& f, const Basis& basis);
Curve reconstruct(const CoefVector& c, const Basis& basis);

Curve add(const Curve& f, const Curve& g);
Curve subtract(const Curve& f, const Curve& g);
Curve scale(const Curve& f, double a);

}  // namespace fqr
