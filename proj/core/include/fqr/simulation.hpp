#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "fqr/sample.hpp"

namespace fqr {

/// Deterministic generator with portable output: mt19937_64 engine, uniform
/// doubles built from the top 53 bits, normals via the polar method. Same
/// seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform01();
  double gauss();

  /// Independent stream for observation `index` under a base seed, so
  /// per-observation generation parallelizes without changing output.
  static Rng for_observation(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class SimModel { Heteroscedastic, LocationScale };

struct LocationScaleSpec {
  std::function<Curve(const Curve&)> location;  // m(X)
  std::function<double(const Curve&)> scale;    // f(X)
};

struct SimConfig {
  int n = 100;
  Grid grid{0.0, 1.0, 101};
  std::uint64_t seed = 0;
  SimModel model = SimModel::Heteroscedastic;
  LocationScaleSpec locationScale;  // used when model == LocationScale
};

/// Standard Brownian path on the grid: starts at 0, independent Gaussian
/// increments with variance dt.
Curve brownian_path(const Grid& grid, Rng& rng);

/// X(t) = U e^t with U ~ Uniform[0,1]; Y(t) = ||X|| B(t).
FunctionalSample gen_heteroscedastic(const SimConfig& config);

/// Y = m(X) + f(X) G with G a Brownian path; covariates as in the
/// heteroscedastic generator.
FunctionalSample gen_location_scale(const SimConfig& config);

FunctionalSample generate(const SimConfig& config);

}  // namespace fqr
