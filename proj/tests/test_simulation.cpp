#include <doctest.h>

#include <cmath>

#include "fqr/simulation.hpp"
#include "helpers.hpp"

using namespace fqr;

TEST_CASE("Rng streams are deterministic and well distributed") {
  Rng a(123), b(123), c(124);
  bool all_equal = true, any_equal_to_c = false;
  for (int k = 0; k < 100; ++k) {
    double ua = a.uniform01(), ub = b.uniform01(), uc = c.uniform01();
    all_equal = all_equal && ua == ub;
    any_equal_to_c = any_equal_to_c || ua == uc;
    CHECK(ua >= 0.0);
    CHECK(ua < 1.0);
  }
  CHECK(all_equal);
  CHECK(!any_equal_to_c);

  Rng g(7);
  double sum = 0.0, sumsq = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    double z = g.gauss();
    sum += z;
    sumsq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("observation streams are independent of each other") {
  Rng s0 = Rng::for_observation(99, 0);
  Rng s1 = Rng::for_observation(99, 1);
  Rng s0b = Rng::for_observation(99, 0);
  bool repeat_equal = true, cross_equal = true;
  for (int k = 0; k < 50; ++k) {
    double a = s0.uniform01();
    double b = s1.uniform01();
    double a2 = s0b.uniform01();
    repeat_equal = repeat_equal && a == a2;
    cross_equal = cross_equal && a == b;
  }
  CHECK(repeat_equal);
  CHECK(!cross_equal);
}

TEST_CASE("brownian_path increments have the right moments") {
  Grid g(0.0, 1.0, 51);
  Rng rng(2024);
  const int paths = 10000;
  double var_end = 0.0, cov_mid_end = 0.0, mean_end = 0.0;
  for (int p = 0; p < paths; ++p) {
    Curve b = brownian_path(g, rng);
    CHECK(b.values[0] == 0.0);
    mean_end += b.values[50];
    var_end += b.values[50] * b.values[50];
    cov_mid_end += b.values[25] * b.values[50];
  }
  mean_end /= paths;
  var_end /= paths;
  cov_mid_end /= paths;
  CHECK(std::abs(mean_end) < 0.05);
  CHECK(std::abs(var_end - 1.0) < 0.05);
  CHECK(std::abs(cov_mid_end - 0.5) < 0.05);
}

TEST_CASE("heteroscedastic generator") {
  SimConfig config;
  config.n = 50;
  config.grid = Grid(0.0, 1.0, 1001);
  config.seed = 5;
  auto sample = gen_heteroscedastic(config);
  REQUIRE(sample.size() == 50);

  const double max_norm = std::sqrt((std::exp(2.0) - 1.0) / 2.0);
  for (int i = 0; i < 50; ++i) {
    const Curve& x = sample.covariates[i];
    // X(t) = U e^t: the starting value recovers U, the norm follows.
    double u = x.values[0];
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
    CHECK(std::abs(norm(x) - u * max_norm) < 1e-4);
    for (int t = 0; t < 1001; ++t) {
      double expected = u * std::exp(config.grid.points()[t]);
      CHECK(std::abs(x.values[t] - expected) < 1e-12);
    }
    // Y(t) = ||X|| B(t) with B(0) = 0.
    CHECK(sample.responses[i].values[0] == 0.0);
  }

  auto again = gen_heteroscedastic(config);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample.covariates[i].values == again.covariates[i].values);
    CHECK(sample.responses[i].values == again.responses[i].values);
  }
  config.seed = 6;
  auto other = gen_heteroscedastic(config);
  CHECK(sample.responses[0].values != other.responses[0].values);
}

TEST_CASE("degenerate scale reduces the location-scale model to its mean") {
  SimConfig config;
  config.n = 20;
  config.grid = Grid(0.0, 1.0, 51);
  config.seed = 11;
  config.model = SimModel::LocationScale;
  config.locationScale.location = [](const Curve& x) { return x; };
  config.locationScale.scale = [](const Curve&) { return 0.0; };
  auto sample = gen_location_scale(config);
  for (int i = 0; i < 20; ++i)
    CHECK(distance(sample.responses[i], sample.covariates[i]) == 0.0);
}

TEST_CASE("location-scale noise level tracks the scale functional") {
  SimConfig config;
  config.n = 400;
  config.grid = Grid(0.0, 1.0, 51);
  config.seed = 17;
  config.model = SimModel::LocationScale;
  config.locationScale.location = [](const Curve& x) { return x; };
  config.locationScale.scale = [](const Curve&) { return 2.0; };
  auto sample = gen_location_scale(config);
  double mean_dev = 0.0;
  for (int i = 0; i < 400; ++i)
    mean_dev += distance(sample.responses[i], sample.covariates[i]);
  mean_dev /= 400.0;
  // E||2 B|| on [0,1] is about 2 * 0.54; allow a generous band.
  CHECK(mean_dev > 0.7);
  CHECK(mean_dev < 1.6);
}

TEST_CASE("generate dispatches on the configured model") {
  SimConfig hetero;
  hetero.n = 5;
  hetero.seed = 1;
  auto a = generate(hetero);
  auto b = gen_heteroscedastic(hetero);
  for (int i = 0; i < 5; ++i)
    CHECK(a.responses[i].values == b.responses[i].values);

  SimConfig ls = hetero;
  ls.model = SimModel::LocationScale;
  ls.locationScale.location = [](const Curve& x) { return x; };
  ls.locationScale.scale = [](const Curve&) { return 1.0; };
  auto c = generate(ls);
  auto d = gen_location_scale(ls);
  for (int i = 0; i < 5; ++i)
    CHECK(c.responses[i].values == d.responses[i].values);
}
