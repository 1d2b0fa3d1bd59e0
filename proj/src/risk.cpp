#include "pinsker/risk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinsker/parallel.hpp"
#include "pinsker/rng.hpp"

namespace pinsker {

double empirical_sq_norm(std::span<const double> f, const DesignGrid& grid) {
  if (f.size() != static_cast<std::size_t>(grid.n)) {
    throw std::invalid_argument("empirical_sq_norm: length mismatch");
  }
  double sum = 0.0;
  for (double v : f) sum += v * v;
  return sum / static_cast<double>(grid.n);
}

Estimator selector_estimator(int n, double gamma) {
  auto family = shared_candidate_family(n);
  const double rho = penalty_weight(n, gamma);
  return {"selector", [family, rho](const FourierCoeffs& coeffs) {
            const std::size_t best = family->select_index(coeffs, rho);
            const WeightVector& lambda = family->vectors()[best];
            std::vector<double> c(coeffs.values.size());
            for (std::size_t j = 0; j < c.size(); ++j) {
              c[j] = lambda.values[j] * coeffs.values[j];
            }
            return c;
          }};
}

Estimator fixed_weight_estimator(const WeightVector& lambda, std::string name) {
  if (name.empty()) {
    name = "lambda[b=" + std::to_string(lambda.index.beta) +
           ",i=" + std::to_string(lambda.index.t_index) + "]";
  }
  return {std::move(name), [lambda](const FourierCoeffs& coeffs) {
            if (coeffs.values.size() != lambda.values.size()) {
              throw std::invalid_argument(
                  "fixed_weight_estimator: grid size mismatch");
            }
            std::vector<double> c(coeffs.values.size());
            for (std::size_t j = 0; j < c.size(); ++j) {
              c[j] = lambda.values[j] * coeffs.values[j];
            }
            return c;
          }};
}

Estimator projection_estimator(int j_max) {
  if (j_max < 1) {
    throw std::invalid_argument("projection_estimator: j_max must be >= 1");
  }
  return {"project" + std::to_string(j_max),
          [j_max](const FourierCoeffs& coeffs) {
            std::vector<double> c(coeffs.values.size(), 0.0);
            const std::size_t keep =
                std::min<std::size_t>(static_cast<std::size_t>(j_max),
                                      c.size());
            for (std::size_t j = 0; j < keep; ++j) c[j] = coeffs.values[j];
            return c;
          }};
}

Estimator reference_weight_estimator(const ModelSpec& spec, int n) {
  const double varsigma_S = varsigma(spec.scale, spec.S);
  const WeightGrid wg = weight_grid(n);
  const double r_bar = spec.ball.r / varsigma_S;
  int i = static_cast<int>(std::ceil(r_bar / wg.eps));
  if (i < 1) i = 1;
  if (i > wg.m) i = wg.m;
  const WeightIndex alpha{spec.ball.k, i, static_cast<double>(i) * wg.eps};
  return fixed_weight_estimator(weight_vector(alpha, n), "reference");
}

namespace {

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStdErr summarize(const std::vector<double>& values) {
  const std::size_t m = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m - 1);
  return {mean, std::sqrt(var / static_cast<double>(m))};
}

void check_spec_family(const std::vector<ModelSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("mc_risk: empty model family");
  for (const ModelSpec& s : specs) {
    if (s.s_name != specs.front().s_name ||
        s.ball.k != specs.front().ball.k || s.ball.r != specs.front().ball.r) {
      throw std::invalid_argument(
          "mc_risk: all densities must share the same S and ball");
    }
  }
}

}  // namespace

RiskReport mc_risk(const Estimator& estimator,
                   const std::vector<ModelSpec>& specs, const DesignGrid& grid,
                   int replications, std::uint64_t seed) {
  if (replications < 2) {
    throw std::invalid_argument("mc_risk: need at least 2 replications");
  }
  check_spec_family(specs);

  const BasisTable table(grid);
  std::vector<double> s_samples(static_cast<std::size_t>(grid.n));
  for (int l = 1; l <= grid.n; ++l) {
    s_samples[static_cast<std::size_t>(l - 1)] =
        specs.front().S(grid.points[static_cast<std::size_t>(l - 1)]);
  }
  const FourierCoeffs theta_s = table.transform(s_samples);

  RiskReport report;
  report.replications = replications;
  report.n = grid.n;

  for (std::size_t d = 0; d < specs.size(); ++d) {
    const ModelSpec& spec = specs[d];
    std::vector<double> losses(static_cast<std::size_t>(replications));
    parallel_for(static_cast<std::size_t>(replications), [&](std::size_t i) {
      RngStream rng(seed, {static_cast<std::uint64_t>(d), i});
      std::vector<double> y;
      std::vector<double> c;
      try {
        y = simulate(spec, grid, rng);
        c = estimator.apply(table.transform(y));
      } catch (const std::exception& e) {
        throw std::runtime_error("mc_risk: estimator '" + estimator.name +
                                 "' failed at replication " +
                                 std::to_string(i) + ": " + e.what());
      }
      if (c.size() != theta_s.values.size()) {
        throw std::runtime_error("mc_risk: estimator '" + estimator.name +
                                 "' returned wrong length at replication " +
                                 std::to_string(i));
      }
      double loss = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        const double diff = c[j] - theta_s.values[j];
        loss += diff * diff;
      }
      losses[i] = loss;
    });
    const MeanStdErr ms = summarize(losses);
    report.per_density.push_back({spec.noise.name(), ms.mean, ms.std_error});
  }

  report.risk = report.per_density.front().mean;
  report.std_error = report.per_density.front().std_error;
  for (const DensityRisk& dr : report.per_density) {
    if (dr.mean > report.risk) {
      report.risk = dr.mean;
      report.std_error = dr.std_error;
    }
  }
  return report;
}

double gamma_star(int k) {
  if (k < 1) throw std::invalid_argument("gamma_star: k must be >= 1");
  const double kd = static_cast<double>(k);
  return std::pow(2.0 * kd + 1.0, 1.0 / (2.0 * kd + 1.0)) *
         std::pow(kd / (std::numbers::pi * (kd + 1.0)),
                  2.0 * kd / (2.0 * kd + 1.0));
}

double gamma_k(const SobolevBall& ball, double varsigma_S) {
  if (!(varsigma_S > 0.0)) {
    throw std::invalid_argument("gamma_k: varsigma must be > 0");
  }
  const double kd = static_cast<double>(ball.k);
  return gamma_star(ball.k) * std::pow(ball.r, 1.0 / (2.0 * kd + 1.0)) *
         std::pow(varsigma_S, 2.0 * kd / (2.0 * kd + 1.0));
}

std::vector<EfficiencyRecord> efficiency_curve(
    const std::vector<ModelSpec>& specs, const std::vector<int>& ns,
    int replications, std::uint64_t seed, double gamma_sel) {
  check_spec_family(specs);
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) {
      throw std::invalid_argument("efficiency_curve: ns must be increasing");
    }
  }
  const double varsigma_S = varsigma(specs.front().scale, specs.front().S);
  const double gamma = gamma_k(specs.front().ball, varsigma_S);
  const double kd = static_cast<double>(specs.front().ball.k);
  const double exponent = 2.0 * kd / (2.0 * kd + 1.0);

  std::vector<EfficiencyRecord> records;
  records.reserve(ns.size());
  for (int n : ns) {
    const DesignGrid grid(n);
    const RiskReport report =
        mc_risk(selector_estimator(n, gamma_sel), specs, grid, replications,
                seed ^ static_cast<std::uint64_t>(n));
    EfficiencyRecord rec;
    rec.n = n;
    rec.risk = report.risk;
    rec.std_error = report.std_error;
    rec.gamma = gamma;
    const double norm = std::pow(static_cast<double>(n), exponent);
    rec.ratio = norm * report.risk / gamma;
    rec.ratio_std_error = norm * report.std_error / gamma;
    records.push_back(rec);
  }
  return records;
}

OracleGapReport oracle_gap(const std::vector<ModelSpec>& specs,
                           const DesignGrid& grid, int replications,
                           std::uint64_t seed, double gamma_sel) {
  if (replications < 2) {
    throw std::invalid_argument("oracle_gap: need at least 2 replications");
  }
  check_spec_family(specs);

  const auto family = shared_candidate_family(grid.n);
  const std::size_t n_candidates = family->vectors().size();
  const double rho = penalty_weight(grid.n, gamma_sel);

  const BasisTable table(grid);
  std::vector<double> s_samples(static_cast<std::size_t>(grid.n));
  for (int l = 1; l <= grid.n; ++l) {
    s_samples[static_cast<std::size_t>(l - 1)] =
        specs.front().S(grid.points[static_cast<std::size_t>(l - 1)]);
  }
  const FourierCoeffs theta_s = table.transform(s_samples);

  OracleGapReport report;
  report.n = grid.n;
  report.replications = replications;
  report.rho = rho;
  report.kappa = kappa(rho);
  report.candidates.resize(n_candidates);
  for (std::size_t c = 0; c < n_candidates; ++c) {
    report.candidates[c].index = family->grid().indices[c];
  }

  // per density, the per-replication losses for every candidate + selector,
  // all computed from the same simulated sample
  std::vector<std::vector<double>> candidate_means(
      n_candidates, std::vector<double>(specs.size()));
  std::vector<std::vector<double>> candidate_errs = candidate_means;

  for (std::size_t d = 0; d < specs.size(); ++d) {
    const ModelSpec& spec = specs[d];
    std::vector<std::vector<double>> losses(
        n_candidates + 1, std::vector<double>(static_cast<std::size_t>(replications)));
    parallel_for(static_cast<std::size_t>(replications), [&](std::size_t i) {
      RngStream rng(seed, {static_cast<std::uint64_t>(d), i});
      const std::vector<double> y = simulate(spec, grid, rng);
      const FourierCoeffs coeffs = table.transform(y);
      const std::size_t chosen = family->select_index(coeffs, rho);
      for (std::size_t c = 0; c < n_candidates; ++c) {
        const WeightVector& lambda = family->vectors()[c];
        double loss = 0.0;
        for (std::size_t j = 0; j < lambda.values.size(); ++j) {
          const double diff =
              lambda.values[j] * coeffs.values[j] - theta_s.values[j];
          loss += diff * diff;
        }
        losses[c][i] = loss;
        if (c == chosen) losses[n_candidates][i] = loss;
      }
    });
    for (std::size_t c = 0; c < n_candidates; ++c) {
      const MeanStdErr ms = summarize(losses[c]);
      candidate_means[c][d] = ms.mean;
      candidate_errs[c][d] = ms.std_error;
      report.candidates[c].per_density.push_back(
          {spec.noise.name(), ms.mean, ms.std_error});
    }
    const MeanStdErr sel = summarize(losses[n_candidates]);
    report.selector_per_density.push_back(
        {spec.noise.name(), sel.mean, sel.std_error});
  }

  // sup over densities per estimator, then the min over candidates
  report.selector_risk = report.selector_per_density.front().mean;
  report.selector_std_error = report.selector_per_density.front().std_error;
  for (const DensityRisk& dr : report.selector_per_density) {
    if (dr.mean > report.selector_risk) {
      report.selector_risk = dr.mean;
      report.selector_std_error = dr.std_error;
    }
  }
  for (std::size_t c = 0; c < n_candidates; ++c) {
    double risk = candidate_means[c][0];
    double err = candidate_errs[c][0];
    for (std::size_t d = 1; d < specs.size(); ++d) {
      if (candidate_means[c][d] > risk) {
        risk = candidate_means[c][d];
        err = candidate_errs[c][d];
      }
    }
    report.candidates[c].risk = risk;
    report.candidates[c].std_error = err;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < n_candidates; ++c) {
    if (report.candidates[c].risk < report.candidates[best].risk) best = c;
  }
  report.best_index = report.candidates[best].index;
  report.best_risk = report.candidates[best].risk;
  report.best_std_error = report.candidates[best].std_error;
  report.ratio = report.selector_risk / report.best_risk;
  report.residual =
      report.selector_risk - (1.0 + report.kappa) * report.best_risk;
  return report;
}

}  // namespace pinsker
