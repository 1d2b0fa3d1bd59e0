// Command-line front door: simulation, estimation, Monte Carlo risk tables
// and the lower-bound lab. Exit codes: 0 success, 2 usage/config error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pinsker/csv.hpp"
#include "pinsker/experiment.hpp"
#include "pinsker/lowerbound.hpp"
#include "pinsker/risk.hpp"
#include "pinsker/selector.hpp"

namespace {

using namespace pinsker;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<double> gamma;
};

ExperimentConfig load_experiment(const CommonFlags& flags) {
  ExperimentConfig config =
      ExperimentConfig::from_config(Config::parse_file(flags.config_path));
  if (flags.seed) config.seed = *flags.seed;
  if (flags.reps) {
    if (*flags.reps < 2) throw ConfigError("--reps", "must be >= 2");
    config.replications = *flags.reps;
  }
  if (flags.gamma) {
    if (!(*flags.gamma > 0.0)) throw ConfigError("--gamma", "must be > 0");
    config.gamma = *flags.gamma;
  }
  return config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("--out", "cannot open '" + path + "' for writing");
  return out;
}

int cmd_simulate(const CommonFlags& flags, int n) {
  const ExperimentConfig config = load_experiment(flags);
  if (n < 3 || n % 2 == 0) throw ConfigError("--n", "n must be odd and >= 3");
  const DesignGrid grid(n);
  const ModelSpec spec = config.model_specs().front();
  RngStream rng(config.seed, {0, 0});
  const std::vector<double> y = simulate(spec, grid, rng);
  const double v_int = spec.scale.v_integral(spec.S);

  std::ofstream out = open_output(flags.out_path);
  out << "x,y,s_true,sigma\n";
  for (int j = 1; j <= n; ++j) {
    const double x = grid.points[static_cast<std::size_t>(j - 1)];
    const double s = spec.S(x);
    const double sigma = std::sqrt(spec.scale.g2_at(x, s, v_int));
    out << format_double(x) << ',' << format_double(y[static_cast<std::size_t>(j - 1)])
        << ',' << format_double(s) << ',' << format_double(sigma) << '\n';
  }
  std::cout << "simulate: n=" << n << " function=" << spec.s_name
            << " density=" << spec.noise.name() << " -> " << flags.out_path
            << "\n";
  return 0;
}

struct Dataset {
  std::vector<double> x;
  std::vector<double> y;
};

Dataset read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--in", "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("--in", "empty file");
  {
    std::istringstream header(line);
    std::string col;
    if (!std::getline(header, col, ',') || col != "x") {
      throw ConfigError("--in", "first column must be 'x'");
    }
    if (!std::getline(header, col, ',') || col != "y") {
      throw ConfigError("--in", "second column must be 'y'");
    }
  }
  Dataset data;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::istringstream fields(line);
    std::string item;
    double values[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(fields, item, ',')) {
        throw ConfigError("--in", "row " + std::to_string(row) +
                                      ": expected at least two columns");
      }
      try {
        values[c] = std::stod(item);
      } catch (const std::exception&) {
        throw ConfigError("--in", "row " + std::to_string(row) +
                                      ": not a number: '" + item + "'");
      }
    }
    if (!std::isfinite(values[1])) {
      throw ConfigError("--in", "row " + std::to_string(row) + ": y not finite");
    }
    data.x.push_back(values[0]);
    data.y.push_back(values[1]);
  }
  if (data.x.empty()) throw ConfigError("--in", "no data rows");
  return data;
}

int cmd_estimate(const std::string& in_path, const std::string& out_path,
                 double gamma) {
  const Dataset data = read_xy_csv(in_path);
  const int n = static_cast<int>(data.x.size());
  if (n % 2 == 0) {
    throw ConfigError("--in", "row count " + std::to_string(n) +
                                  " is even; the estimator needs odd n");
  }
  if (n < 3) throw ConfigError("--in", "need at least 3 rows");
  // the estimator is defined only on the sieve x_j = j/n
  for (int j = 1; j <= n; ++j) {
    const double expected = static_cast<double>(j) / static_cast<double>(n);
    if (std::fabs(data.x[static_cast<std::size_t>(j - 1)] - expected) > 1e-9) {
      throw ConfigError(
          "--in", "row " + std::to_string(j) + ": x = " +
                      format_double(data.x[static_cast<std::size_t>(j - 1)]) +
                      " is not on the sieve (expected " +
                      format_double(expected) + ")");
    }
  }

  const DesignGrid grid(n);
  const SelectOutput result = select(data.y, grid, gamma);

  std::ofstream out = open_output(out_path);
  out << "x,y,fitted\n";
  for (int j = 1; j <= n; ++j) {
    out << format_double(data.x[static_cast<std::size_t>(j - 1)]) << ','
        << format_double(data.y[static_cast<std::size_t>(j - 1)]) << ','
        << format_double(result.estimate.fitted[static_cast<std::size_t>(j - 1)])
        << '\n';
  }

  const SelectionResult& sel = result.selection;
  std::ofstream summary(out_path + ".summary", std::ios::binary);
  if (!summary) {
    throw ConfigError("--out", "cannot open '" + out_path + ".summary'");
  }
  summary << "n = " << n << '\n'
          << "gamma = " << format_double(gamma) << '\n'
          << "beta = " << sel.chosen.beta << '\n'
          << "t = " << format_double(sel.chosen.t) << '\n'
          << "omega = " << format_double(result.estimate.weight.omega) << '\n'
          << "j0 = " << result.estimate.weight.j0 << '\n'
          << "zeta_hat = " << format_double(sel.zeta_hat) << '\n'
          << "rho = " << format_double(sel.rho) << '\n'
          << "cost = " << format_double(sel.cost) << '\n';

  std::cout << "estimate: n=" << n << " chosen beta=" << sel.chosen.beta
            << " t=" << format_double(sel.chosen.t)
            << " J=" << format_double(sel.cost) << " -> " << out_path << "\n";
  return 0;
}

void write_risk_header(std::ofstream& out) {
  out << "n,density,estimator,mean,stderr,ratio,gamma\n";
}

void write_risk_rows(std::ofstream& out, int n, const std::string& estimator,
                     const std::vector<DensityRisk>& per_density, double risk,
                     double risk_err, double norm, double gamma) {
  for (const DensityRisk& dr : per_density) {
    out << n << ',' << dr.density << ',' << estimator << ','
        << format_double(dr.mean) << ',' << format_double(dr.std_error) << ','
        << format_double(norm * dr.mean / gamma) << ',' << format_double(gamma)
        << '\n';
  }
  out << n << ",sup," << estimator << ',' << format_double(risk) << ','
      << format_double(risk_err) << ',' << format_double(norm * risk / gamma)
      << ',' << format_double(gamma) << '\n';
}

int cmd_risk(const CommonFlags& flags) {
  const ExperimentConfig config = load_experiment(flags);
  if (config.ns.empty()) throw ConfigError("run.ns", "missing n ladder");
  const std::vector<ModelSpec> specs = config.model_specs();
  const double varsigma_S = varsigma(specs.front().scale, specs.front().S);
  const double gamma = gamma_k(config.ball, varsigma_S);
  const double kd = static_cast<double>(config.ball.k);

  std::ofstream out = open_output(flags.out_path);
  write_risk_header(out);
  for (int n : config.ns) {
    const DesignGrid grid(n);
    const double norm =
        std::pow(static_cast<double>(n), 2.0 * kd / (2.0 * kd + 1.0));
    const RiskReport sel =
        mc_risk(selector_estimator(n, config.gamma), specs, grid,
                config.replications, config.seed ^ static_cast<std::uint64_t>(n));
    write_risk_rows(out, n, "selector", sel.per_density, sel.risk,
                    sel.std_error, norm, gamma);
    const RiskReport ref = mc_risk(
        reference_weight_estimator(specs.front(), n), specs, grid,
        config.replications, config.seed ^ static_cast<std::uint64_t>(n));
    write_risk_rows(out, n, "reference", ref.per_density, ref.risk,
                    ref.std_error, norm, gamma);
    std::cout << "risk: n=" << n << " selector=" << format_double(sel.risk)
              << " reference=" << format_double(ref.risk)
              << " ratio=" << format_double(norm * sel.risk / gamma) << "\n";
  }
  return 0;
}

int cmd_efficiency(const CommonFlags& flags) {
  const ExperimentConfig config = load_experiment(flags);
  if (config.ns.empty()) throw ConfigError("run.ns", "missing n ladder");
  const std::vector<ModelSpec> specs = config.model_specs();
  const std::vector<EfficiencyRecord> records = efficiency_curve(
      specs, config.ns, config.replications, config.seed, config.gamma);

  std::ofstream out = open_output(flags.out_path);
  write_risk_header(out);
  for (const EfficiencyRecord& rec : records) {
    out << rec.n << ",sup,selector," << format_double(rec.risk) << ','
        << format_double(rec.std_error) << ',' << format_double(rec.ratio)
        << ',' << format_double(rec.gamma) << '\n';
    std::cout << "efficiency: n=" << rec.n
              << " ratio=" << format_double(rec.ratio) << " (stderr "
              << format_double(rec.ratio_std_error) << ")\n";
  }
  return 0;
}

int cmd_oracle_gap(const CommonFlags& flags) {
  const ExperimentConfig config = load_experiment(flags);
  if (config.ns.empty()) throw ConfigError("run.ns", "missing n ladder");
  const std::vector<ModelSpec> specs = config.model_specs();
  const double varsigma_S = varsigma(specs.front().scale, specs.front().S);
  const double gamma = gamma_k(config.ball, varsigma_S);
  const double kd = static_cast<double>(config.ball.k);

  std::ofstream out = open_output(flags.out_path);
  write_risk_header(out);
  for (int n : config.ns) {
    const DesignGrid grid(n);
    const double norm =
        std::pow(static_cast<double>(n), 2.0 * kd / (2.0 * kd + 1.0));
    (void)norm;
    const OracleGapReport report =
        oracle_gap(specs, grid, config.replications,
                   config.seed ^ static_cast<std::uint64_t>(n), config.gamma);
    for (const CandidateRisk& cand : report.candidates) {
      const std::string name = "lambda[b=" + std::to_string(cand.index.beta) +
                               ",i=" + std::to_string(cand.index.t_index) + "]";
      out << n << ",sup," << name << ',' << format_double(cand.risk) << ','
          << format_double(cand.std_error) << ','
          << format_double(cand.risk / report.best_risk) << ','
          << format_double(gamma) << '\n';
    }
    out << n << ",sup,selector," << format_double(report.selector_risk) << ','
        << format_double(report.selector_std_error) << ','
        << format_double(report.ratio) << ',' << format_double(gamma) << '\n';
    std::cout << "oracle-gap: n=" << n
              << " selector=" << format_double(report.selector_risk)
              << " best=" << format_double(report.best_risk) << " (beta="
              << report.best_index.beta << ", i=" << report.best_index.t_index
              << ") ratio=" << format_double(report.ratio)
              << " 1+kappa=" << format_double(1.0 + report.kappa)
              << " residual=" << format_double(report.residual) << "\n";
  }
  return 0;
}

int cmd_lowerbound(const CommonFlags& flags) {
  const ExperimentConfig config = load_experiment(flags);
  if (config.lb_ns.empty()) throw ConfigError("lowerbound.ns", "missing n ladder");
  const KernelProfile profile(config.lb_eta);

  std::ofstream out = open_output(flags.out_path);
  out << "n,quantity,value\n";
  auto row = [&out](long long n, const std::string& quantity, double value) {
    out << n << ',' << quantity << ',' << format_double(value) << '\n';
  };

  for (long long n : config.lb_ns) {
    const PriorDesign design =
        design_from_paper(config.lb_k, config.lb_r, config.lb_epsilon, n,
                          config.scale, config.lb_rule, config.lb_fixed_N);
    const ConditionsReport conditions = conditions_check(design, config.lb_eps0);
    const BoundComponents components = bound_components(
        design, profile, config.scale, config.lb_draws, config.seed);
    const BayesBound bound = bayes_lower_bound(design, profile, components);

    double f_dev = 0.0, b_ratio_max = 0.0;
    for (int m = 0; m < design.M; ++m) {
      for (int j = 0; j < design.N; ++j) {
        const double target = components.ebar_I2[static_cast<std::size_t>(j)] /
                              (design.g0_centers[static_cast<std::size_t>(m)] *
                               design.g0_centers[static_cast<std::size_t>(m)]);
        const double dev = std::fabs(
            components.F_ratio[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] /
                target -
            1.0);
        f_dev = std::max(f_dev, dev);
        b_ratio_max = std::max(
            b_ratio_max,
            components.B_ratio[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]);
      }
    }

    const double kd = static_cast<double>(config.lb_k);
    const double norm =
        std::pow(static_cast<double>(n), 2.0 * kd / (2.0 * kd + 1.0));
    const double gamma0 = gamma_k(SobolevBall(config.lb_k, config.lb_r),
                                  design.varsigma0);
    const double target =
        std::pow(1.0 - config.lb_epsilon, 1.0 / (2.0 * kd + 1.0)) * gamma0;

    row(n, "N", design.N);
    row(n, "M", design.M);
    row(n, "h", design.h);
    row(n, "h_star", design.h_star);
    row(n, "g0_hat", design.g0_hat);
    row(n, "R_star", design.R_star);
    row(n, "t_star", design.t_star);
    row(n, "d", design.d);
    row(n, "a2_sum", conditions.a2_sum);
    row(n, "sqrt_d_t_star", conditions.sqrt_d_t_star);
    row(n, "a3_sum", conditions.a3_sum);
    row(n, "a3_limit", conditions.a3_limit);
    row(n, "a3_ok", conditions.a3_ok ? 1.0 : 0.0);
    row(n, "a4_sum", conditions.a4_sum);
    row(n, "f_ratio_max_dev", f_dev);
    row(n, "b_ratio_max", b_ratio_max);
    row(n, "bound_double_sum", bound.double_sum);
    row(n, "bound_tau_form", bound.tau_form);
    row(n, "bound_tau_normalized", norm * bound.tau_form);
    row(n, "target", target);
    row(n, "bound_ratio", norm * bound.tau_form / target);

    std::cout << "lowerbound: n=" << n << " N=" << design.N
              << " M=" << design.M << " a3_ok=" << (conditions.a3_ok ? 1 : 0)
              << " bound_ratio=" << format_double(norm * bound.tau_form / target)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive weighted-least-squares regression lab"};
  app.require_subcommand(1);

  CommonFlags flags;
  int sim_n = 101;
  std::string in_path;
  double est_gamma = 2.0;

  auto add_common = [&flags](CLI::App* cmd, bool needs_config) {
    if (needs_config) {
      cmd->add_option("--config", flags.config_path, "config file")->required();
    }
    cmd->add_option("--out", flags.out_path, "output CSV path")->required();
    cmd->add_option("--seed", flags.seed, "seed override");
    cmd->add_option("--reps", flags.reps, "replication override");
    cmd->add_option("--gamma", flags.gamma, "penalty exponent override");
  };

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "draw one dataset from the model");
  add_common(simulate_cmd, true);
  simulate_cmd->add_option("--n", sim_n, "sample count (odd)")->required();

  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "run the adaptive estimator on a dataset");
  estimate_cmd->add_option("--in", in_path, "input CSV with header x,y")
      ->required();
  estimate_cmd->add_option("--out", flags.out_path, "output CSV path")
      ->required();
  estimate_cmd->add_option("--gamma", est_gamma, "penalty exponent");

  CLI::App* risk_cmd =
      app.add_subcommand("risk", "Monte Carlo risk table for the n ladder");
  add_common(risk_cmd, true);

  CLI::App* efficiency_cmd = app.add_subcommand(
      "efficiency", "normalized risk against the Pinsker constant");
  add_common(efficiency_cmd, true);

  CLI::App* gap_cmd = app.add_subcommand(
      "oracle-gap", "selector risk against every candidate risk");
  add_common(gap_cmd, true);

  CLI::App* lb_cmd =
      app.add_subcommand("lowerbound", "prior design and Bayes-risk bound ladder");
  add_common(lb_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(flags, sim_n);
    if (estimate_cmd->parsed())
      return cmd_estimate(in_path, flags.out_path, est_gamma);
    if (risk_cmd->parsed()) return cmd_risk(flags);
    if (efficiency_cmd->parsed()) return cmd_efficiency(flags);
    if (gap_cmd->parsed()) return cmd_oracle_gap(flags);
    if (lb_cmd->parsed()) return cmd_lowerbound(flags);
  } catch (const pinsker::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
