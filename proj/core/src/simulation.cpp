#include "fqr/simulation.hpp"

#include <cmath>

namespace fqr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::for_observation(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  splitmix64(state);
  state ^= index * 0xD1B54A32D192ED03ULL;
  return Rng(splitmix64(state));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gauss() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Curve brownian_path(const Grid& grid, Rng& rng) {
  Vector v(grid.count);
  v[0] = 0.0;
  double sd = std::sqrt(grid.dt());
  for (int k = 1; k < grid.count; ++k) v[k] = v[k - 1] + sd * rng.gauss();
  return Curve(grid, std::move(v));
}

FunctionalSample gen_heteroscedastic(const SimConfig& config) {
  if (config.n < 1) throw InvalidArgument("sample size must be >= 1");
  FunctionalSample sample;
  sample.covariates.reserve(static_cast<std::size_t>(config.n));
  sample.responses.reserve(static_cast<std::size_t>(config.n));
  Vector expT = config.grid.points().array().exp();
  for (int i = 0; i < config.n; ++i) {
    Rng rng = Rng::for_observation(config.seed, static_cast<std::uint64_t>(i));
    double u = rng.uniform01();
    Curve x(config.grid, u * expT);
    Curve b = brownian_path(config.grid, rng);
    Curve y = scale(b, norm(x));
    sample.covariates.push_back(std::move(x));
    sample.responses.push_back(std::move(y));
  }
  return sample;
}

FunctionalSample gen_location_scale(const SimConfig& config) {
  if (config.n < 1) throw InvalidArgument("sample size must be >= 1");
  if (!config.locationScale.location || !config.locationScale.scale)
    throw InvalidArgument("location-scale model needs m(.) and f(.)");
  FunctionalSample sample;
  sample.covariates.reserve(static_cast<std::size_t>(config.n));
  sample.responses.reserve(static_cast<std::size_t>(config.n));
  Vector expT = config.grid.points().array().exp();
  for (int i = 0; i < config.n; ++i) {
    Rng rng = Rng::for_observation(config.seed, static_cast<std::uint64_t>(i));
    double u = rng.uniform01();
    Curve x(config.grid, u * expT);
    Curve g = brownian_path(config.grid, rng);
    Curve y = add(config.locationScale.location(x),
                  scale(g, config.locationScale.scale(x)));
    sample.covariates.push_back(std::move(x));
    sample.responses.push_back(std::move(y));
  }
  return sample;
}

FunctionalSample generate(const SimConfig& config) {
  switch (config.model) {
    case SimModel::Heteroscedastic:
      return gen_heteroscedastic(config);
    case SimModel::LocationScale:
      return gen_location_scale(config);
  }
  throw InvalidArgument("unknown simulation model");
}

}  // namespace fqr
