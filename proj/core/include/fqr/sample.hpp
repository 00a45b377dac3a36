#pragma once

#include <vector>

#include "fqr/function_space.hpp"

namespace fqr {

/// Paired covariate/response curves (X_i, Y_i), i = 1..n.
struct FunctionalSample {
  std::vector<Curve> covariates;
  std::vector<Curve> responses;

  int size() const { return static_cast<int>(covariates.size()); }

  void validate() const {
    if (covariates.size() != responses.size())
      throw DimensionMismatch("covariate/response counts differ");
    for (const auto& c : covariates)
      if (c.grid != covariates.front().grid)
        throw GridMismatch("covariates are not on a common grid");
    for (const auto& r : responses)
      if (r.grid != responses.front().grid)
        throw GridMismatch("responses are not on a common grid");
  }

  /// Sample with observation i removed.
  FunctionalSample without(int i) const {
    FunctionalSample out;
    out.covariates.reserve(covariates.size() - 1);
    out.responses.reserve(responses.size() - 1);
    for (int j = 0; j < size(); ++j) {
      if (j == i) continue;
      out.covariates.push_back(covariates[j]);
      out.responses.push_back(responses[j]);
    }
    return out;
  }
};

}  // namespace fqr
