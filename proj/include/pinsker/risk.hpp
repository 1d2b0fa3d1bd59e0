#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pinsker/basis.hpp"
#include "pinsker/models.hpp"
#include "pinsker/selector.hpp"

namespace pinsker {

// ||f||_n^2 = n^{-1} sum_l f(x_l)^2
double empirical_sq_norm(std::span<const double> f, const DesignGrid& grid);

// Estimators act on the discrete Fourier coefficients and return estimated
// coefficients. Losses are evaluated in coefficient space: with odd n the
// basis is a complete orthonormal system on the grid, so
// ||S_hat - S||_n^2 = sum_j (c_j - theta_{j,n})^2 exactly.
struct Estimator {
  std::string name;
  std::function<std::vector<double>(const FourierCoeffs&)> apply;
};

Estimator selector_estimator(int n, double gamma = 2.0);
Estimator fixed_weight_estimator(const WeightVector& lambda, std::string name = "");
Estimator projection_estimator(int j_max);  // keep coefficients 1..j_max
// lambda_tilde from the oracle-informed reference index (needs the true model)
Estimator reference_weight_estimator(const ModelSpec& spec, int n);

struct DensityRisk {
  std::string density;
  double mean = 0.0;
  double std_error = 0.0;
};

struct RiskReport {
  std::vector<DensityRisk> per_density;
  double risk = 0.0;       // max over densities (the sup in the risk)
  double std_error = 0.0;  // standard error of the attaining density
  int replications = 0;
  int n = 0;
};

// Monte Carlo estimate of sup_p E ||S_hat - S||_n^2 over the configured
// finite density family. One ModelSpec per density; all specs must share
// S, scale and ball. Deterministic given the seed: replication (d, i) draws
// from its own stream and the reductions are sequential.
RiskReport mc_risk(const Estimator& estimator,
                   const std::vector<ModelSpec>& specs, const DesignGrid& grid,
                   int replications, std::uint64_t seed);

// Gamma*_k = (2k+1)^{1/(2k+1)} (k / (pi (k+1)))^{2k/(2k+1)}
double gamma_star(int k);

// Pinsker constant gamma_k(S) = Gamma*_k r^{1/(2k+1)} varsigma(S)^{2k/(2k+1)}
double gamma_k(const SobolevBall& ball, double varsigma_S);

struct EfficiencyRecord {
  int n = 0;
  double risk = 0.0;
  double std_error = 0.0;
  double gamma = 0.0;            // gamma_k(S)
  double ratio = 0.0;            // n^{2k/(2k+1)} risk / gamma
  double ratio_std_error = 0.0;
};

// Runs mc_risk for the adaptive estimator over an n-ladder and normalizes by
// the Pinsker constant.
std::vector<EfficiencyRecord> efficiency_curve(
    const std::vector<ModelSpec>& specs, const std::vector<int>& ns,
    int replications, std::uint64_t seed, double gamma_sel = 2.0);

struct CandidateRisk {
  WeightIndex index;
  double risk = 0.0;
  double std_error = 0.0;
  std::vector<DensityRisk> per_density;
};

struct OracleGapReport {
  int n = 0;
  int replications = 0;
  double rho = 0.0;
  double kappa = 0.0;
  double selector_risk = 0.0;
  double selector_std_error = 0.0;
  std::vector<DensityRisk> selector_per_density;
  WeightIndex best_index;
  double best_risk = 0.0;
  double best_std_error = 0.0;
  double ratio = 0.0;     // selector_risk / best_risk
  double residual = 0.0;  // selector_risk - (1 + kappa) best_risk
  std::vector<CandidateRisk> candidates;
};

// Both sides of the oracle inequality: the selector risk against the best
// candidate risk, every candidate evaluated on the same simulated data
// (common random numbers).
OracleGapReport oracle_gap(const std::vector<ModelSpec>& specs,
                           const DesignGrid& grid, int replications,
                           std::uint64_t seed, double gamma_sel = 2.0);

}  // namespace pinsker
