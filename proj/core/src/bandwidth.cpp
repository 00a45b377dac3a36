#include "fqr/bandwidth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "fqr/parallel.hpp"

namespace fqr {

namespace {

Curve pointwise_weighted_median(const FunctionalSample& sample,
                                const WeightVector& wv) {
  const Grid& g = sample.responses.front().grid;
  Vector out(g.count);
  std::vector<std::pair<double, double>> vals;  // (value, weight)
  for (int t = 0; t < g.count; ++t) {
    vals.clear();
    for (int i = 0; i < sample.size(); ++i) {
      if (wv.weights[i] > 0.0)
        vals.emplace_back(sample.responses[i].values[t], wv.weights[i]);
    }
    std::sort(vals.begin(), vals.end());
    double total = 0.0;
    for (auto& [v, w] : vals) total += w;
    double acc = 0.0;
    out[t] = vals.back().first;
    for (auto& [v, w] : vals) {
      acc += w;
      if (acc >= 0.5 * total) {
        out[t] = v;
        break;
      }
    }
  }
  return Curve(g, std::move(out));
}

Curve weighted_mean(const FunctionalSample& sample, const WeightVector& wv) {
  const Grid& g = sample.responses.front().grid;
  Vector out = Vector::Zero(g.count);
  for (int i = 0; i < sample.size(); ++i)
    out += wv.weights[i] * sample.responses[i].values;
  return Curve(g, out / wv.total);
}

}  // namespace

Curve loo_median(const FunctionalSample& sample, int i, const Curve& x0, double h,
                 const KernelSpec& spec, const CVConfig& config) {
  FunctionalSample rest = sample.without(i);
  auto nbhd = neighborhood(x0, rest.covariates, h);
  if (static_cast<int>(nbhd.size()) < config.minNeighbors)
    throw DegenerateNeighborhood("leave-one-out neighborhood has " +
                                 std::to_string(nbhd.size()) + " points, need " +
                                 std::to_string(config.minNeighbors));
  switch (config.predictor) {
    case CVPredictor::SpatialMedian: {
      LocalModel model = build_local_model(rest, x0, h, spec);
      CoefVector zero = CoefVector::Zero(model.coords.cols());
      return finish_fit(model, solve(make_problem(model, zero), config.solver))
          .curve;
    }
    case CVPredictor::PointwiseMedian: {
      WeightVector wv = compute_weights(x0, rest.covariates, h, spec);
      return pointwise_weighted_median(rest, wv);
    }
    case CVPredictor::Mean: {
      WeightVector wv = compute_weights(x0, rest.covariates, h, spec);
      return weighted_mean(rest, wv);
    }
  }
  throw InvalidArgument("unknown CV predictor");
}

std::optional<double> cv_score(const FunctionalSample& sample, double h,
                               const KernelSpec& spec, const CVConfig& config) {
  if (h <= 0.0) throw InvalidArgument("bandwidth must be positive");
  sample.validate();
  const int n = sample.size();
  Vector errs(n);
  std::atomic<bool> infeasible{false};
  parallel_for(n, [&](int i) {
    if (infeasible.load()) return;
    try {
      Curve pred = loo_median(sample, i, sample.covariates[i], h, spec, config);
      errs[i] = distance(pred, sample.responses[i]);
    } catch (const Error&) {
      infeasible.store(true);
    }
  });
  if (infeasible.load()) return std::nullopt;
  return errs.mean();
}

std::vector<double> auto_bandwidth_grid(const FunctionalSample& sample) {
  std::vector<double> dist;
  const int n = sample.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dist.push_back(distance(sample.covariates[i], sample.covariates[j]));
  std::sort(dist.begin(), dist.end());
  if (dist.empty()) throw InvalidArgument("need at least 2 observations");
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) {
    std::size_t idx = static_cast<std::size_t>(
        std::min<double>(std::floor(0.1 * k * static_cast<double>(dist.size())),
                         static_cast<double>(dist.size() - 1)));
    grid.push_back(dist[idx]);
  }
  grid.push_back(dist.back());
  // Drop duplicates and nonpositive entries from discrete distance sets.
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::erase_if(grid, [](double h) { return h <= 0.0; });
  return grid;
}

CVResult select_bandwidth(const FunctionalSample& sample,
                          const std::vector<double>& candidates,
                          const KernelSpec& spec, const CVConfig& config) {
  if (candidates.empty()) throw InvalidArgument("empty candidate grid");
  CVResult result;
  std::vector<std::optional<double>> scores(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), [&](int k) {
    scores[static_cast<std::size_t>(k)] =
        cv_score(sample, candidates[static_cast<std::size_t>(k)], spec, config);
  });

  double best_score = std::numeric_limits<double>::infinity();
  double best_h = 0.0;
  bool found = false;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!scores[k]) {
      result.infeasible.push_back(candidates[k]);
      continue;
    }
    result.scores.emplace_back(candidates[k], *scores[k]);
    if (*scores[k] < best_score ||
        (*scores[k] == best_score && candidates[k] < best_h)) {
      best_score = *scores[k];
      best_h = candidates[k];
      found = true;
    }
  }
  if (!found) throw AllInfeasible();
  result.hOpt = best_h;
  return result;
}

}  // namespace fqr
