#include "fqr/depth_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fqr/parallel.hpp"

namespace fqr {

std::pair<std::vector<int>, Vector> order_by_depth(const FunctionalSample& sample,
                                                   const Curve& x0, double h,
                                                   const KernelSpec& spec) {
  sample.validate();
  WeightVector wv = compute_weights(x0, sample.covariates, h, spec);
  std::vector<int> idx;
  for (int i = 0; i < sample.size(); ++i)
    if (wv.weights[i] > 0.0) idx.push_back(i);

  std::vector<double> depth(static_cast<std::size_t>(sample.size()), 0.0);
  for (int i : idx)
    depth[static_cast<std::size_t>(i)] =
        spatial_depth_hat(sample.responses[i], x0, sample, h, spec);

  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)];
  });

  Vector depths(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    depths[static_cast<Eigen::Index>(k)] = depth[static_cast<std::size_t>(idx[k])];
  return {std::move(idx), std::move(depths)};
}

DepthSetResult maximal_depth_set(const FunctionalSample& sample, const Curve& x0,
                                 double p, double h, const KernelSpec& spec) {
  if (p <= 0.0 || p >= 1.0) throw InvalidP(p);
  auto [ordered, depths] = order_by_depth(sample, x0, h, spec);
  WeightVector wv = compute_weights(x0, sample.covariates, h, spec);

  // Normalized weights of the depth-ordered points; the cutoff is the first
  // prefix accumulating conditional mass p.
  int cutoff = static_cast<int>(ordered.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    acc += wv.weights[ordered[k]] / wv.total;
    if (acc >= p) {
      cutoff = static_cast<int>(k) + 1;
      break;
    }
  }

  DepthSetResult result;
  result.orderedIndices = std::move(ordered);
  result.depths = std::move(depths);
  result.cutoff = cutoff;
  result.p = p;
  result.d1 = d1_spread(result, sample);
  return result;
}

double d1_spread(const DepthSetResult& result, const FunctionalSample& sample) {
  double best = 0.0;
  for (int a = 0; a < result.cutoff; ++a) {
    for (int b = a + 1; b < result.cutoff; ++b) {
      best = std::max(best, distance(sample.responses[result.orderedIndices[a]],
                                     sample.responses[result.orderedIndices[b]]));
    }
  }
  return best;
}

double d2_spread(const FunctionalSample& sample, const Curve& x0,
                 const CoefVector& tau, double h, const KernelSpec& spec,
                 const SolverConfig& config) {
  if (tau.norm() >= 1.0) throw InvalidArgument("tau must have norm < 1");
  LocalModel model = build_local_model(sample, x0, h, spec);
  CoefVector t = CoefVector::Zero(model.coords.cols());
  for (Eigen::Index k = 0; k < std::min(t.size(), tau.size()); ++k) t[k] = tau[k];
  QuantileFit plus = finish_fit(model, solve(make_problem(model, t), config));
  QuantileFit minus = finish_fit(model, solve(make_problem(model, -t), config));
  return distance(plus.curve, minus.curve);
}

SpreadProfile spread_profile(const FunctionalSample& sample, double p, double h,
                             const KernelSpec& spec, const SolverConfig& config) {
  if (p <= 0.0 || p >= 1.0) throw InvalidP(p);
  sample.validate();
  const int n = sample.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Vector d1 = Vector::Constant(n, nan);
  Vector d2 = Vector::Constant(n, nan);
  parallel_for(n, [&](int i) {
    const Curve& x0 = sample.covariates[i];
    try {
      d1[i] = maximal_depth_set(sample, x0, p, h, spec).d1;
    } catch (const Error&) {
    }
    try {
      LocalModel model = build_local_model(sample, x0, h, spec);
      CoefVector tau = tau_first_component(model, 0.5);
      QuantileFit plus = finish_fit(model, solve(make_problem(model, tau), config));
      QuantileFit minus =
          finish_fit(model, solve(make_problem(model, -tau), config));
      d2[i] = distance(plus.curve, minus.curve);
    } catch (const Error&) {
    }
  });

  // Rank covariates by L2 norm, ties by index; emit in rank order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) norms[static_cast<std::size_t>(i)] = norm(sample.covariates[i]);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return norms[static_cast<std::size_t>(a)] < norms[static_cast<std::size_t>(b)];
  });

  SpreadProfile profile;
  profile.covariateRanks.resize(static_cast<std::size_t>(n));
  profile.d1Values.resize(n);
  profile.d2Values.resize(n);
  for (int r = 0; r < n; ++r) {
    profile.covariateRanks[static_cast<std::size_t>(r)] = r + 1;
    profile.d1Values[r] = d1[order[static_cast<std::size_t>(r)]];
    profile.d2Values[r] = d2[order[static_cast<std::size_t>(r)]];
  }
  return profile;
}

}  // namespace fqr
