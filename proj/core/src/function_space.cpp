#include "fqr/function_space.hpp"

#include <cmath>

namespace fqr {

Grid::Grid(double start_, double end_, int count_)
    : start(start_), end(end_), count(count_) {
  if (count < 1) throw InvalidArgument("grid count must be >= 1");
  if (count == 1) {
    if (end != start) throw InvalidArgument("one-point grid requires end == start");
  } else if (end <= start) {
    throw InvalidArgument("grid requires end > start");
  }
}

Vector Grid::points() const {
  Vector p(count);
  for (int k = 0; k < count; ++k) p[k] = start + k * dt();
  return p;
}

Vector Grid::quad_weights() const {
  if (count == 1) return Vector::Constant(1, 1.0);
  Vector w = Vector::Constant(count, dt());
  w[0] *= 0.5;
  w[count - 1] *= 0.5;
  return w;
}

Curve::Curve(Grid g, Vector v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.count)
    throw DimensionMismatch("curve has " + std::to_string(values.size()) +
                            " values for a grid of count " +
                            std::to_string(grid.count));
  if (!values.allFinite()) throw InvalidArgument("curve contains non-finite values");
}

double inner_product(const Curve& f, const Curve& g) {
  if (f.grid != g.grid) throw GridMismatch();
  return f.grid.quad_weights().cwiseProduct(f.values).dot(g.values);
}

double norm(const Curve& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double distance(const Curve& f, const Curve& g) {
  if (f.grid != g.grid) throw GridMismatch();
  Curve diff(f.grid, f.values - g.values);
  return norm(diff);
}

CoefVector project(const Curve& f, const Basis& basis) {
  CoefVector c(basis.dimension());
  for (int k = 0; k < basis.dimension(); ++k)
    c[k] = inner_product(f, basis.functions[k]);
  return c;
}

Curve reconstruct(const CoefVector& c, const Basis& basis) {
  if (c.size() != basis.dimension())
    throw DimensionMismatch("coefficient vector of length " +
                            std::to_string(c.size()) + " for a basis of dimension " +
                            std::to_string(basis.dimension()));
  Vector v = Vector::Zero(basis.grid().count);
  for (int k = 0; k < basis.dimension(); ++k)
    v += c[k] * basis.functions[k].values;
  return Curve(basis.grid(), std::move(v));
}

Curve add(const Curve& f, const Curve& g) {
  if (f.grid != g.grid) throw GridMismatch();
  return Curve(f.grid, f.values + g.values);
}

Curve subtract(const Curve& f, const Curve& g) {
  if (f.grid != g.grid) throw GridMismatch();
  return Curve(f.grid, f.values - g.values);
}

Curve scale(const Curve& f, double a) { return Curve(f.grid, a * f.values); }

}  // namespace fqr
