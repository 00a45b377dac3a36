#include "fqr/quantile_solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fqr {

namespace {

void validate(const QuantileProblem& p) {
  const Eigen::Index n = p.responses.rows();
  if (p.weights.weights.size() != n)
    throw DimensionMismatch("weight vector length does not match response count");
  if (p.tau.size() != p.responses.cols())
    throw DimensionMismatch("tau dimension does not match response coordinates");
  if (p.tau.norm() >= 1.0)
    throw InvalidArgument("quantile direction must have norm < 1");
  if (p.weights.total <= 0.0) throw EmptyNeighborhood();
}

// Index of a response row within tol of q, or -1.
int coincident_row(const QuantileProblem& p, const CoefVector& q, double tol) {
  for (Eigen::Index i = 0; i < p.responses.rows(); ++i) {
    if ((q - p.responses.row(i).transpose()).norm() <= tol)
      return static_cast<int>(i);
  }
  return -1;
}

CoefVector weighted_coordinatewise_median(const Matrix& responses,
                                          const Vector& weights, double total) {
  const Eigen::Index n = responses.rows();
  const Eigen::Index d = responses.cols();
  CoefVector med(d);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < d; ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return responses(a, k) < responses(b, k);
    });
    double acc = 0.0;
    med[k] = responses(order.back(), k);
    for (int idx : order) {
      acc += weights[idx];
      if (acc >= 0.5 * total) {  // lower median at even splits
        med[k] = responses(idx, k);
        break;
      }
    }
  }
  return med;
}

}  // namespace

double objective(const QuantileProblem& p, const CoefVector& q) {
  if (q.size() != p.responses.cols())
    throw DimensionMismatch("query dimension does not match responses");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.responses.rows(); ++i)
    acc += p.weights.weights[i] * (q - p.responses.row(i).transpose()).norm();
  return acc / p.weights.total - p.tau.dot(q);
}

CoefVector gradient(const QuantileProblem& p, const CoefVector& q, double tol) {
  CoefVector acc = CoefVector::Zero(q.size());
  for (Eigen::Index i = 0; i < p.responses.rows(); ++i) {
    CoefVector diff = q - p.responses.row(i).transpose();
    double r = diff.norm();
    if (r <= tol && p.weights.weights[i] > 0.0)
      throw NotDifferentiable(static_cast<int>(i));
    if (r > tol) acc += p.weights.weights[i] / r * diff;
  }
  return acc / p.weights.total - p.tau;
}

bool candidate_check(const QuantileProblem& p, int i, double tol) {
  const Eigen::Index n = p.responses.rows();
  if (i < 0 || i >= n) throw InvalidArgument("candidate index out of range");
  CoefVector yi = p.responses.row(i).transpose();
  CoefVector lhs = CoefVector::Zero(p.tau.size());
  double tied_weight = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    CoefVector diff = yi - p.responses.row(j).transpose();
    double r = diff.norm();
    if (r <= tol) {
      tied_weight += p.weights.weights[j];
    } else {
      lhs += p.weights.weights[j] * (diff / r - p.tau);
    }
  }
  return lhs.norm() <= (1.0 + p.tau.norm()) * tied_weight;
}

CoefVector newton_step(const QuantileProblem& p, const CoefVector& q, double tol) {
  const Eigen::Index d = q.size();
  CoefVector v = CoefVector::Zero(d);
  Matrix a = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < p.responses.rows(); ++i) {
    if (p.weights.weights[i] == 0.0) continue;
    CoefVector diff = q - p.responses.row(i).transpose();
    double r = diff.norm();
    if (r <= tol) throw NotDifferentiable(static_cast<int>(i));
    v += p.weights.weights[i] * (diff / r - p.tau);
    a += p.weights.weights[i] *
         (Matrix::Identity(d, d) / r - (diff * diff.transpose()) / (r * r * r));
  }

  Eigen::LLT<Matrix> llt(a);
  if (llt.info() == Eigen::Success) {
    CoefVector step = llt.solve(v);
    if (step.allFinite()) return q - step;
  }
  double lambda = 1e-10 * a.trace() / static_cast<double>(d);
  if (lambda > 0.0) {
    for (int k = 0; k < 20; ++k, lambda *= 2.0) {
      Eigen::LLT<Matrix> ridge(a + lambda * Matrix::Identity(d, d));
      if (ridge.info() != Eigen::Success) continue;
      CoefVector step = ridge.solve(v);
      if (step.allFinite()) return q - step;
    }
  }
  throw SingularHessian();
}

QuantileFit solve(const QuantileProblem& p, const SolverConfig& cfg,
                  std::optional<CoefVector> initial) {
  validate(p);
  const Eigen::Index n = p.responses.rows();
  const double tol = cfg.coincidenceTol;

  auto make_fit = [&](CoefVector point, SolveStatus status, int candidate,
                      int iterations, double gradNorm) {
    QuantileFit fit;
    fit.objective = objective(p, point);
    fit.curve = p.basis.dimension() > 0 ? reconstruct(point, p.basis) : Curve{};
    fit.point = std::move(point);
    fit.status = status;
    fit.candidateIndex = candidate;
    fit.iterations = iterations;
    fit.finalGradientNorm = gradNorm;
    return fit;
  };

  // Phase 1: is some data point itself the quantile?
  int best_candidate = -1;
  double best_candidate_obj = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p.weights.weights[i] <= 0.0) continue;
    bool duplicate = false;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (p.weights.weights[j] > 0.0 &&
          (p.responses.row(i) - p.responses.row(j)).norm() <= tol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    if (!candidate_check(p, static_cast<int>(i), tol)) continue;
    double obj = objective(p, p.responses.row(i).transpose());
    if (obj < best_candidate_obj - 1e-15) {
      best_candidate_obj = obj;
      best_candidate = static_cast<int>(i);
    }
  }
  if (best_candidate >= 0) {
    return make_fit(p.responses.row(best_candidate).transpose(),
                    SolveStatus::CandidatePoint, best_candidate, 0,
                    std::numeric_limits<double>::quiet_NaN());
  }

  // Phase 2: damped Newton iteration on the smooth region.
  CoefVector q = initial ? *initial
                         : weighted_coordinatewise_median(
                               p.responses, p.weights.weights, p.weights.total);
  double g_record = objective(p, q);
  CoefVector best_point = q;
  double best_obj = g_record;

  // Certificate floor: a fit is only reported Newton-converged when its
  // gradient norm supports the optimality check downstream.
  const double cert_tol = std::max(cfg.gradTol, 1e-6);

  int iter = 0;
  for (; iter < cfg.maxIterations; ++iter) {
    int hit = coincident_row(p, q, tol);
    if (hit >= 0) {
      if (candidate_check(p, hit, tol)) {
        return make_fit(p.responses.row(hit).transpose(),
                        SolveStatus::CandidatePoint, hit, iter,
                        std::numeric_limits<double>::quiet_NaN());
      }
      // Failed data point: nudge off it along the descent direction.
      CoefVector v = CoefVector::Zero(q.size());
      for (Eigen::Index i = 0; i < n; ++i) {
        CoefVector diff = q - p.responses.row(i).transpose();
        double r = diff.norm();
        if (r > tol) v += p.weights.weights[i] * (diff / r - p.tau);
      }
      double vn = v.norm();
      if (vn > 0.0)
        q -= (10.0 * tol / vn) * v;
      else
        q[0] += 10.0 * tol;
    }

    CoefVector grad = gradient(p, q, tol);
    double grad_norm = grad.norm();
    double obj_q = objective(p, q);
    if (obj_q < best_obj) {
      best_obj = obj_q;
      best_point = q;
    }
    if (grad_norm <= cfg.gradTol) {
      return make_fit(q, SolveStatus::NewtonConverged, -1, iter, grad_norm);
    }

    CoefVector q_newton = newton_step(p, q, tol);
    double obj_newton = objective(p, q_newton);
    CoefVector q_next;
    if (obj_newton <= g_record) {
      q_next = q_newton;
    } else {
      double f = obj_newton / (obj_newton + g_record);
      if (obj_newton > 0.0 && g_record > 0.0 && f >= 0.0 && f < 1.0) {
        q_next = f * q + (1.0 - f) * q_newton;
      } else {
        // Nonpositive objectives make the damping factor ill-defined;
        // back off toward q until the objective stops increasing.
        double keep = 0.5;
        q_next = keep * q + (1.0 - keep) * q_newton;
        for (int k = 0; k < 60 && objective(p, q_next) > obj_q; ++k) {
          keep = 0.5 * (1.0 + keep);
          q_next = keep * q + (1.0 - keep) * q_newton;
        }
      }
    }

    double step = (q_next - q).norm();
    double obj_next = objective(p, q_next);
    g_record = std::min(g_record, obj_next);
    if (obj_next < best_obj) {
      best_obj = obj_next;
      best_point = q_next;
    }
    bool step_converged = step <= cfg.stepTol * (1.0 + q.norm());
    q = q_next;
    if (step_converged && coincident_row(p, q, tol) < 0) {
      double gn = gradient(p, q, tol).norm();
      if (gn <= cert_tol) {
        return make_fit(q, SolveStatus::NewtonConverged, -1, iter + 1, gn);
      }
    }
  }

  double final_grad = std::numeric_limits<double>::quiet_NaN();
  if (coincident_row(p, best_point, tol) < 0)
    final_grad = gradient(p, best_point, tol).norm();
  return make_fit(best_point, SolveStatus::MaxIterations, -1, iter, final_grad);
}

LocalModel build_local_model(const FunctionalSample& sample, const Curve& x0,
                             double h, const KernelSpec& spec) {
  LocalModel model;
  CovarianceEstimate cov = estimate_conditional_covariance(sample, x0, h, spec);
  model.weights = compute_weights(x0, sample.covariates, h, spec);
  model.neighborhoodCount =
      static_cast<int>(neighborhood(x0, sample.covariates, h).size());
  int d = effective_dimension(cov, std::max(1, model.neighborhoodCount));
  model.basis = eigenbasis(cov, d);
  model.mean = cov.mean;

  const int n = sample.size();
  model.coords.resize(n, d);
  for (int i = 0; i < n; ++i) {
    Curve centered = subtract(sample.responses[i], model.mean);
    model.coords.row(i) = project(centered, model.basis).transpose();
  }
  return model;
}

QuantileProblem make_problem(const LocalModel& model, CoefVector tau) {
  if (tau.size() != model.coords.cols())
    throw DimensionMismatch("tau dimension does not match local basis");
  return QuantileProblem{std::move(tau), model.coords, model.weights, model.basis};
}

CoefVector tau_first_component(const LocalModel& model, double scale) {
  CoefVector tau = CoefVector::Zero(model.coords.cols());
  tau[0] = scale;
  return tau;
}

QuantileFit finish_fit(const LocalModel& model, QuantileFit fit) {
  fit.curve = add(model.mean, reconstruct(fit.point, model.basis));
  return fit;
}

QuantileFit fit_conditional_quantile(const FunctionalSample& sample,
                                     const Curve& x0, const CoefVector& tau_coords,
                                     double h, const KernelSpec& spec,
                                     const SolverConfig& config) {
  LocalModel model = build_local_model(sample, x0, h, spec);
  return finish_fit(model, solve(make_problem(model, tau_coords), config));
}

}  // namespace fqr
