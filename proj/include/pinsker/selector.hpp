#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pinsker/basis.hpp"
#include "pinsker/models.hpp"
#include "pinsker/weights.hpp"

namespace pinsker {

// l_n = [n^{1/3} + 1], computed with an integer cube root so that perfect
// cubes do not fall victim to floating-point rounding.
int high_freq_start(int n);

// zeta_hat = sum_{j > l_n} theta_hat_j^2, the high-frequency noise-level proxy.
double zeta_hat(const FourierCoeffs& coeffs);

// rho = 1 / (3 + ln^gamma n), always inside (0, 1/3) for n >= 3.
double penalty_weight(int n, double gamma);

// P_hat(lambda) = |lambda|^2 zeta_hat / n
double penalty(const WeightVector& lambda, double zeta, int n);

// J_n(lambda) = sum lambda^2 theta_hat^2 - 2 sum lambda theta_tilde
//             + rho P_hat(lambda), theta_tilde_j = theta_hat_j^2 - zeta_hat/n.
double cost(const WeightVector& lambda, const FourierCoeffs& coeffs,
            double zeta, double rho);

// kappa(rho) = (6 rho - 2 rho^2) / (1 - 3 rho), the oracle-inequality factor.
double kappa(double rho);

struct SelectionResult {
  WeightIndex chosen;
  double cost = 0.0;
  double zeta_hat = 0.0;
  double rho = 0.0;
  std::vector<std::pair<WeightIndex, double>> all_costs;  // grid order
};

struct Estimate {
  std::vector<double> coefficients;  // lambda(j) theta_hat_j
  std::vector<double> fitted;        // basis synthesis on the grid
  WeightVector weight;
};

// Coefficient shrinkage followed by synthesis on the grid.
Estimate reconstruct(const WeightVector& lambda, const FourierCoeffs& coeffs,
                     const DesignGrid& grid);

// Weight family with precomputed vectors, reused across Monte Carlo
// replications at fixed n.
class CandidateFamily {
 public:
  explicit CandidateFamily(int n);

  const WeightGrid& grid() const { return grid_; }
  const std::vector<WeightVector>& vectors() const { return vectors_; }
  int n() const { return grid_.n; }

  // Index of the J_n argmin. Ties are broken toward the lexicographically
  // smallest (beta, t), applied after all costs are gathered so the result
  // does not depend on evaluation order. Optional outputs receive zeta_hat
  // and the per-candidate costs.
  std::size_t select_index(const FourierCoeffs& coeffs, double rho,
                           double* zeta_out = nullptr,
                           std::vector<double>* costs_out = nullptr) const;

 private:
  WeightGrid grid_;
  std::vector<WeightVector> vectors_;
};

std::shared_ptr<const CandidateFamily> shared_candidate_family(int n);

struct SelectOutput {
  SelectionResult selection;
  Estimate estimate;
};

// The adaptive procedure: evaluates J_n over the whole family and returns the
// minimizer together with the reconstructed estimate. Deterministic for fixed
// input.
SelectOutput select(std::span<const double> y, const DesignGrid& grid,
                    double gamma = 2.0);

struct ReferenceResult {
  Estimate estimate;
  WeightIndex alpha;    // (k, t_tilde)
  double r_bar = 0.0;   // r / varsigma(S)
  bool clamped = false; // r_bar exceeded m * eps, t_tilde clamped at m eps
};

// Oracle-informed benchmark estimator: picks t_tilde as the smallest grid
// point >= r / varsigma(S) (clamped at m eps) and uses alpha = (k, t_tilde).
// Needs the true S, ball and scale, so it is a benchmark only.
ReferenceResult reference_estimator(const ModelSpec& spec,
                                    std::span<const double> y,
                                    const DesignGrid& grid);

}  // namespace pinsker
