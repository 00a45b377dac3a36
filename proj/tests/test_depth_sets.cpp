#include <doctest.h>

#include <cmath>

#include "fqr/depth_sets.hpp"
#include "helpers.hpp"

using namespace fqr;
using testutil::random_curve;

namespace {

FunctionalSample cloud(const Grid& g, int n, Rng& rng, double scale = 1.0) {
  FunctionalSample sample;
  for (int i = 0; i < n; ++i) {
    sample.covariates.push_back(Curve::zero(g));
    sample.responses.push_back(random_curve(g, rng, scale));
  }
  return sample;
}

}  // namespace

TEST_CASE("scalar depth ordering with index tie-break") {
  auto sample = testutil::scalar_sample({1.0, 2.0, 3.0});
  Grid g = scalar_grid();
  KernelSpec spec;
  auto [ordered, depths] = order_by_depth(sample, Curve::zero(g), 1.0, spec);
  // Depths are 1/3, 1, 1/3: the middle value leads, the tied extremes
  // follow in ascending index order.
  CHECK(ordered == std::vector<int>{1, 0, 2});
  CHECK(depths[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(depths[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(depths[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("maximal_depth_set cutoff and d1 on scalar data") {
  auto sample = testutil::scalar_sample({1.0, 2.0, 3.0});
  Grid g = scalar_grid();
  KernelSpec spec;
  auto result = maximal_depth_set(sample, Curve::zero(g), 0.5, 1.0, spec);
  // Equal weights: prefixes accumulate 1/3, 2/3, ... so i_p = 2.
  CHECK(result.cutoff == 2);
  CHECK(result.d1 == doctest::Approx(1.0).epsilon(1e-12));

  auto single = maximal_depth_set(sample, Curve::zero(g), 0.3, 1.0, spec);
  CHECK(single.cutoff == 1);
  CHECK(single.d1 == 0.0);

  CHECK_THROWS_AS(maximal_depth_set(sample, Curve::zero(g), 0.0, 1.0, spec), InvalidP);
  CHECK_THROWS_AS(maximal_depth_set(sample, Curve::zero(g), 1.0, 1.0, spec), InvalidP);
}

TEST_CASE("depth set matches an exhaustive oracle") {
  Grid grid(0.0, 1.0, 15);
  Rng rng(19);
  auto sample = cloud(grid, 8, rng);
  KernelSpec spec;
  Curve x0 = Curve::zero(grid);
  auto result = maximal_depth_set(sample, x0, 0.6, 1.0, spec);

  std::vector<std::pair<double, int>> oracle;
  for (int i = 0; i < 8; ++i)
    oracle.emplace_back(-spatial_depth_hat(sample.responses[i], x0, sample, 1.0, spec), i);
  std::sort(oracle.begin(), oracle.end());
  for (int k = 0; k < 8; ++k) {
    CHECK(result.orderedIndices[static_cast<std::size_t>(k)] == oracle[static_cast<std::size_t>(k)].second);
    CHECK(result.depths[k] == doctest::Approx(-oracle[static_cast<std::size_t>(k)].first).epsilon(1e-12));
  }
  // Equal weights: i_p = ceil(p * m).
  CHECK(result.cutoff == 5);

  double best = 0.0;
  for (int a = 0; a < result.cutoff; ++a)
    for (int b = a + 1; b < result.cutoff; ++b)
      best = std::max(best, distance(sample.responses[result.orderedIndices[static_cast<std::size_t>(a)]],
                                     sample.responses[result.orderedIndices[static_cast<std::size_t>(b)]]));
  CHECK(result.d1 == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("depth sets are nested and d1 is monotone in p") {
  Grid grid(0.0, 1.0, 11);
  Rng rng(47);
  KernelSpec spec;
  for (int rep = 0; rep < 20; ++rep) {
    auto sample = cloud(grid, 12, rng);
    Curve x0 = Curve::zero(grid);
    int prev_cutoff = 0;
    double prev_d1 = 0.0;
    for (double p : {0.2, 0.4, 0.6, 0.8}) {
      auto result = maximal_depth_set(sample, x0, p, 1.0, spec);
      CHECK(result.cutoff >= prev_cutoff);
      CHECK(result.d1 >= prev_d1 - 1e-14);
      prev_cutoff = result.cutoff;
      prev_d1 = result.d1;
    }
  }
}

TEST_CASE("d2_spread on scalar data") {
  auto sample = testutil::scalar_sample({1.0, 2.0, 3.0, 4.0, 5.0});
  Grid g = scalar_grid();
  KernelSpec spec;
  CoefVector tau(1);
  tau[0] = 0.5;
  // Levels 0.75 and 0.25 pick values 4 and 2.
  CHECK(d2_spread(sample, Curve::zero(g), tau, 1.0, spec) ==
        doctest::Approx(2.0).epsilon(1e-10));

  CoefVector zero = CoefVector::Zero(1);
  CHECK(d2_spread(sample, Curve::zero(g), zero, 1.0, spec) < 1e-10);

  CoefVector bad(1);
  bad[0] = 1.0;
  CHECK_THROWS_AS(d2_spread(sample, Curve::zero(g), bad, 1.0, spec), InvalidArgument);
}

TEST_CASE("d2 grows with the scale of the response cloud") {
  Grid grid(0.0, 1.0, 21);
  Rng rng(61);
  auto narrow = cloud(grid, 30, rng, 1.0);
  auto wide = narrow;
  for (auto& y : wide.responses) y = scale(y, 4.0);
  KernelSpec spec;
  CoefVector tau(1);
  tau[0] = 0.5;
  double d_narrow = d2_spread(narrow, Curve::zero(grid), tau, 1.0, spec);
  double d_wide = d2_spread(wide, Curve::zero(grid), tau, 1.0, spec);
  CHECK(d_wide > 2.0 * d_narrow);
}

TEST_CASE("spread_profile aligns values with covariate-norm ranks") {
  Grid grid(0.0, 1.0, 11);
  // Covariates at norms 3, 1, 2 so ranks reorder the units as 1 -> 2 -> 0.
  FunctionalSample sample;
  Rng rng(71);
  for (double c : {3.0, 1.0, 2.0}) {
    for (int rep = 0; rep < 4; ++rep) {
      sample.covariates.push_back(Curve::constant(grid, c + 0.01 * rep));
      sample.responses.push_back(random_curve(grid, rng, c));
    }
  }
  KernelSpec spec;
  auto profile = spread_profile(sample, 0.5, 0.5, spec);
  CHECK(profile.covariateRanks.size() == 12);
  for (int r = 0; r < 12; ++r)
    CHECK(profile.covariateRanks[static_cast<std::size_t>(r)] == r + 1);
  CHECK(profile.d1Values.size() == 12);
  CHECK(profile.d2Values.size() == 12);
}

TEST_CASE("spread_profile marks infeasible evaluation points with NaN") {
  Grid grid(0.0, 1.0, 11);
  FunctionalSample sample;
  Rng rng(83);
  // A far-out covariate whose neighborhood at h=1 contains only itself:
  // D1 degenerates to a singleton diameter while the quantile fit (which
  // needs a covariance estimate) fails and is reported as NaN.
  for (int i = 0; i < 5; ++i) {
    sample.covariates.push_back(Curve::constant(grid, 0.1 * i));
    sample.responses.push_back(random_curve(grid, rng));
  }
  sample.covariates.push_back(Curve::constant(grid, 50.0));
  sample.responses.push_back(random_curve(grid, rng));

  KernelSpec spec;
  auto profile = spread_profile(sample, 0.5, 1.0, spec);
  // The outlier has the largest norm, hence the last rank.
  CHECK(profile.d1Values[5] == 0.0);
  CHECK(std::isnan(profile.d2Values[5]));
  for (int r = 0; r < 5; ++r) {
    CHECK(!std::isnan(profile.d1Values[r]));
    CHECK(!std::isnan(profile.d2Values[r]));
  }
}
