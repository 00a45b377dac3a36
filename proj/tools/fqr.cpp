// Command-line front end: simulation, conditional quantile fits, maximal
// depth sets, spread profiles, and bandwidth cross-validation, all emitting
// plot-ready result bundles.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "fqr/bandwidth.hpp"
#include "fqr/data_io.hpp"
#include "fqr/depth_sets.hpp"
#include "fqr/quantile_solver.hpp"
#include "fqr/simulation.hpp"

namespace {

using namespace fqr;

PanelSchema parse_schema(const std::string& spec) {
  std::vector<std::string> cols;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) cols.push_back(item);
  if (cols.size() != 4)
    throw CLI::ValidationError(
        "--schema", "expected 4 comma-separated column names, got '" + spec + "'");
  return PanelSchema{cols[0], cols[1], cols[2], cols[3]};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Evaluation points: explicit unit ids / 1-based indices, or by default the
// 6 covariate curves with equidistant ranks in the L2-norm ordering.
std::vector<int> evaluation_points(const FunctionalSample& sample,
                                   const std::vector<std::string>& unit_names,
                                   const std::vector<std::string>& requested) {
  const int n = sample.size();
  if (!requested.empty()) {
    std::vector<int> out;
    for (const std::string& r : requested) {
      auto it = std::find(unit_names.begin(), unit_names.end(), r);
      if (it != unit_names.end()) {
        out.push_back(static_cast<int>(it - unit_names.begin()));
        continue;
      }
      try {
        std::size_t pos = 0;
        int idx = std::stoi(r, &pos);
        if (pos == r.size() && idx >= 1 && idx <= n) {
          out.push_back(idx - 1);
          continue;
        }
      } catch (const std::exception&) {
      }
      throw Error("evaluation point '" + r + "' matches no unit id or index");
    }
    return out;
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return norm(sample.covariates[a]) < norm(sample.covariates[b]);
  });
  int k = std::min(6, n);
  std::vector<int> out;
  for (int j = 0; j < k; ++j) {
    int rank = k == 1 ? 0
                      : static_cast<int>(std::lround(
                            static_cast<double>(j) * (n - 1) / (k - 1)));
    out.push_back(order[static_cast<std::size_t>(rank)]);
  }
  return out;
}

double resolve_bandwidth(const std::string& h_flag, const FunctionalSample& sample,
                         const KernelSpec& spec,
                         std::map<std::string, std::string>& metadata) {
  if (h_flag == "cv") {
    CVResult cv = select_bandwidth(sample, auto_bandwidth_grid(sample), spec);
    metadata["h"] = fmt(cv.hOpt);
    metadata["h.selection"] = "cv";
    return cv.hOpt;
  }
  double h = std::stod(h_flag);
  if (h <= 0.0) throw Error("bandwidth must be positive");
  metadata["h"] = fmt(h);
  metadata["h.selection"] = "fixed";
  return h;
}

// tau flag: "0", "<scale>u1" (e.g. 0.5u1, -0.5u1), or a comma list of basis
// coefficients. Returns the coordinates for a local model of dimension d.
CoefVector resolve_tau(const std::string& tau_flag, const LocalModel& model) {
  const Eigen::Index d = model.coords.cols();
  if (tau_flag == "0") return CoefVector::Zero(d);
  auto u1 = tau_flag.find("u1");
  if (u1 != std::string::npos && u1 == tau_flag.size() - 2) {
    double s = std::stod(tau_flag.substr(0, u1));
    return tau_first_component(model, s);
  }
  std::vector<double> coefs;
  std::stringstream ss(tau_flag);
  std::string item;
  while (std::getline(ss, item, ',')) coefs.push_back(std::stod(item));
  CoefVector tau = CoefVector::Zero(d);
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(d, coefs.size()); ++k)
    tau[k] = coefs[static_cast<std::size_t>(k)];
  if (tau.norm() >= 1.0) throw Error("tau must have norm < 1");
  return tau;
}

Series curve_series(const std::string& name, const Curve& c) {
  Series s;
  s.name = name;
  Vector t = c.grid.points();
  s.t.assign(t.data(), t.data() + t.size());
  s.v.assign(c.values.data(), c.values.data() + c.values.size());
  return s;
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw Error("unknown format '" + f + "'");
}

struct CommonInput {
  std::string input;
  std::string schema = "unit,time,covariate,response";
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonInput& ci) {
  cmd->add_option("--input", ci.input, "input panel CSV")->required();
  cmd->add_option("--schema", ci.schema,
                  "unit,time,covariate,response column names");
  cmd->add_option("--out", ci.out, "output file")->required();
  cmd->add_option("--format", ci.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int run(int argc, char** argv) {
  CLI::App app{"Nonparametric spatial-depth and spatial-quantile regression "
               "for function-valued data"};
  app.require_subcommand(1);
  // --h is a bandwidth flag below; keep help on --help only.
  app.set_help_flag("--help", "print help");

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a synthetic panel");
  std::string sim_model = "hetero";
  int sim_n = 100;
  int sim_grid_count = 101;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  sim->add_option("--model", sim_model, "hetero or locscale")
      ->check(CLI::IsMember({"hetero", "locscale"}));
  sim->add_option("--n", sim_n, "sample size")->check(CLI::PositiveNumber);
  sim->add_option("--grid-count", sim_grid_count, "grid points on [0,1]")
      ->check(CLI::Range(2, 100000));
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output panel CSV")->required();

  // fit-quantiles
  auto* fit = app.add_subcommand("fit-quantiles",
                                 "conditional spatial quantile curves");
  CommonInput fit_ci;
  add_common(fit, fit_ci);
  std::vector<std::string> fit_x;
  std::string fit_tau = "0.5u1";
  std::string fit_h = "cv";
  fit->add_option("--x", fit_x, "evaluation points (unit id or 1-based index)");
  fit->add_option("--tau", fit_tau, "0, <scale>u1, or comma coefficients");
  fit->add_option("--h", fit_h, "bandwidth value or 'cv'");

  // depth-set
  auto* depth = app.add_subcommand("depth-set", "conditional maximal depth sets");
  CommonInput depth_ci;
  add_common(depth, depth_ci);
  std::vector<std::string> depth_x;
  double depth_p = 0.5;
  std::string depth_h = "cv";
  depth->add_option("--x", depth_x, "evaluation points");
  depth->add_option("--p", depth_p, "conditional mass of the set")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  depth->add_option("--h", depth_h, "bandwidth value or 'cv'");

  // spread-profile
  auto* spread = app.add_subcommand("spread-profile",
                                    "D1/D2 spread against covariate rank");
  CommonInput spread_ci;
  add_common(spread, spread_ci);
  double spread_p = 0.5;
  std::string spread_h = "cv";
  spread->add_option("--p", spread_p, "conditional mass for D1")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  spread->add_option("--h", spread_h, "bandwidth value or 'cv'");

  // cv
  auto* cv = app.add_subcommand("cv", "leave-one-out bandwidth selection");
  CommonInput cv_ci;
  add_common(cv, cv_ci);
  std::string cv_grid = "auto";
  cv->add_option("--grid", cv_grid, "'auto' or comma list of bandwidths");

  for (CLI::App* s : {sim, fit, depth, spread, cv})
    s->set_help_flag("--help", "print help");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  KernelSpec spec;

  if (sim->parsed()) {
    SimConfig config;
    config.n = sim_n;
    config.grid = Grid(0.0, 1.0, sim_grid_count);
    config.seed = sim_seed;
    if (sim_model == "hetero") {
      config.model = SimModel::Heteroscedastic;
    } else {
      // Homoscedastic reference model: Y = X + G with unit noise scale.
      config.model = SimModel::LocationScale;
      config.locationScale.location = [](const Curve& x) { return x; };
      config.locationScale.scale = [](const Curve&) { return 1.0; };
    }
    FunctionalSample sample = generate(config);
    write_panel(sample, sim_out, PanelSchema{});
    return 0;
  }

  if (fit->parsed()) {
    PanelSchema schema = parse_schema(fit_ci.schema);
    std::vector<std::string> units;
    FunctionalSample sample = read_panel(fit_ci.input, schema, &units);
    ResultBundle bundle;
    bundle.kind = BundleKind::QuantileCurves;
    bundle.metadata["command"] = "fit-quantiles";
    bundle.metadata["input"] = fit_ci.input;
    bundle.metadata["schema"] = fit_ci.schema;
    bundle.metadata["tau"] = fit_tau;
    double h = resolve_bandwidth(fit_h, sample, spec, bundle.metadata);
    auto points = evaluation_points(sample, units, fit_x);
    for (int idx : points) {
      const std::string& unit = units[static_cast<std::size_t>(idx)];
      try {
        LocalModel model =
            build_local_model(sample, sample.covariates[idx], h, spec);
        CoefVector tau = resolve_tau(fit_tau, model);
        CoefVector zero = CoefVector::Zero(model.coords.cols());
        QuantileFit qp = finish_fit(model, solve(make_problem(model, tau)));
        QuantileFit q0 = finish_fit(model, solve(make_problem(model, zero)));
        QuantileFit qm = finish_fit(model, solve(make_problem(model, -tau)));
        bundle.series.push_back(curve_series(unit + ":tau+", qp.curve));
        bundle.series.push_back(curve_series(unit + ":median", q0.curve));
        bundle.series.push_back(curve_series(unit + ":tau-", qm.curve));
        bundle.metadata["diag." + unit + ".iterations"] =
            std::to_string(qp.iterations + q0.iterations + qm.iterations);
        bundle.metadata["diag." + unit + ".objective"] = fmt(q0.objective);
      } catch (const Error& e) {
        throw Error("evaluation point '" + unit + "': " + e.what());
      }
    }
    write_results(bundle, fit_ci.out, parse_format(fit_ci.format));
    return 0;
  }

  if (depth->parsed()) {
    PanelSchema schema = parse_schema(depth_ci.schema);
    std::vector<std::string> units;
    FunctionalSample sample = read_panel(depth_ci.input, schema, &units);
    ResultBundle bundle;
    bundle.kind = BundleKind::DepthSet;
    bundle.metadata["command"] = "depth-set";
    bundle.metadata["input"] = depth_ci.input;
    bundle.metadata["schema"] = depth_ci.schema;
    bundle.metadata["p"] = fmt(depth_p);
    double h = resolve_bandwidth(depth_h, sample, spec, bundle.metadata);
    auto points = evaluation_points(sample, units, depth_x);
    for (int idx : points) {
      const std::string& unit = units[static_cast<std::size_t>(idx)];
      try {
        DepthSetResult result = maximal_depth_set(
            sample, sample.covariates[idx], depth_p, h, spec);
        Series depths;
        depths.name = unit + ":depth";
        for (int k = 0; k < static_cast<int>(result.orderedIndices.size()); ++k) {
          depths.t.push_back(k + 1);
          depths.v.push_back(result.depths[k]);
        }
        bundle.series.push_back(std::move(depths));
        for (int k = 0; k < result.cutoff; ++k) {
          int member = result.orderedIndices[static_cast<std::size_t>(k)];
          bundle.series.push_back(curve_series(
              unit + ":member:" + units[static_cast<std::size_t>(member)],
              sample.responses[member]));
        }
        bundle.metadata["ip." + unit] = std::to_string(result.cutoff);
        bundle.metadata["d1." + unit] = fmt(result.d1);
      } catch (const Error& e) {
        throw Error("evaluation point '" + unit + "': " + e.what());
      }
    }
    write_results(bundle, depth_ci.out, parse_format(depth_ci.format));
    return 0;
  }

  if (spread->parsed()) {
    PanelSchema schema = parse_schema(spread_ci.schema);
    FunctionalSample sample = read_panel(spread_ci.input, schema);
    ResultBundle bundle;
    bundle.kind = BundleKind::SpreadProfile;
    bundle.metadata["command"] = "spread-profile";
    bundle.metadata["input"] = spread_ci.input;
    bundle.metadata["schema"] = spread_ci.schema;
    bundle.metadata["p"] = fmt(spread_p);
    bundle.metadata["tau.rule"] = "0.5*u1";
    double h = resolve_bandwidth(spread_h, sample, spec, bundle.metadata);
    SpreadProfile profile = spread_profile(sample, spread_p, h, spec);
    Series d1{"D1", {}, {}}, d2{"D2", {}, {}};
    int missing = 0;
    for (std::size_t k = 0; k < profile.covariateRanks.size(); ++k) {
      double rank = profile.covariateRanks[k];
      if (std::isfinite(profile.d1Values[static_cast<Eigen::Index>(k)])) {
        d1.t.push_back(rank);
        d1.v.push_back(profile.d1Values[static_cast<Eigen::Index>(k)]);
      } else {
        ++missing;
      }
      if (std::isfinite(profile.d2Values[static_cast<Eigen::Index>(k)])) {
        d2.t.push_back(rank);
        d2.v.push_back(profile.d2Values[static_cast<Eigen::Index>(k)]);
      }
    }
    bundle.metadata["missing.d1"] = std::to_string(missing);
    bundle.series.push_back(std::move(d1));
    bundle.series.push_back(std::move(d2));
    write_results(bundle, spread_ci.out, parse_format(spread_ci.format));
    return 0;
  }

  if (cv->parsed()) {
    PanelSchema schema = parse_schema(cv_ci.schema);
    FunctionalSample sample = read_panel(cv_ci.input, schema);
    std::vector<double> candidates;
    if (cv_grid == "auto") {
      candidates = auto_bandwidth_grid(sample);
    } else {
      std::stringstream ss(cv_grid);
      std::string item;
      while (std::getline(ss, item, ',')) candidates.push_back(std::stod(item));
    }
    CVResult result = select_bandwidth(sample, candidates, spec);
    ResultBundle bundle;
    bundle.kind = BundleKind::CVTrace;
    bundle.metadata["command"] = "cv";
    bundle.metadata["input"] = cv_ci.input;
    bundle.metadata["schema"] = cv_ci.schema;
    bundle.metadata["grid"] = cv_grid;
    bundle.metadata["hOpt"] = fmt(result.hOpt);
    Series score{"score", {}, {}};
    for (auto& [h, s] : result.scores) {
      score.t.push_back(h);
      score.v.push_back(s);
    }
    Series infeasible{"infeasible", {}, {}};
    for (double h : result.infeasible) {
      infeasible.t.push_back(h);
      infeasible.v.push_back(0.0);
    }
    bundle.series.push_back(std::move(score));
    if (!infeasible.t.empty()) bundle.series.push_back(std::move(infeasible));
    write_results(bundle, cv_ci.out, parse_format(cv_ci.format));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fqr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
