#pragma once

#include <stdexcept>
#include <string>

namespace fqr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridMismatch : Error {
  GridMismatch() : Error("curves do not share the same grid") {}
  explicit GridMismatch(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

struct EmptyNeighborhood : Error {
  EmptyNeighborhood() : Error("no covariate within bandwidth") {}
};

struct DegenerateNeighborhood : Error {
  explicit DegenerateNeighborhood(const std::string& what) : Error(what) {}
};

struct NotDifferentiable : Error {
  explicit NotDifferentiable(int idx)
      : Error("point coincides with response " + std::to_string(idx)),
        index(idx) {}
  int index;
};

struct SingularHessian : Error {
  SingularHessian() : Error("Hessian factorization failed after ridge fallback") {}
};

struct InvalidP : Error {
  explicit InvalidP(double p)
      : Error("p must lie in (0,1), got " + std::to_string(p)) {}
};

struct MissingCell : Error {
  MissingCell(const std::string& unit, const std::string& time)
      : Error("missing value for unit '" + unit + "' at time " + time) {}
};

struct RaggedPanel : Error {
  explicit RaggedPanel(const std::string& unit)
      : Error("unit '" + unit + "' does not cover the common time grid") {}
};

struct ParseError : Error {
  explicit ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

struct AllInfeasible : Error {
  AllInfeasible() : Error("no candidate bandwidth is feasible") {}
};

}  // namespace fqr
