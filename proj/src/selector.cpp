#include "pinsker/selector.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pinsker {

int high_freq_start(int n) {
  if (n < 3) throw std::invalid_argument("high_freq_start: n must be >= 3");
  // integer cube root of n
  int c = static_cast<int>(std::cbrt(static_cast<double>(n)));
  while (static_cast<long long>(c) * c * c > n) --c;
  while (static_cast<long long>(c + 1) * (c + 1) * (c + 1) <= n) ++c;
  return c + 1;  // [n^{1/3} + 1] = [n^{1/3}] + 1
}

double zeta_hat(const FourierCoeffs& coeffs) {
  const int n = coeffs.n;
  const int start = high_freq_start(n);
  if (start >= n) {
    throw std::invalid_argument("zeta_hat: n too small, l_n >= n");
  }
  double sum = 0.0;
  for (int j = start + 1; j <= n; ++j) {
    const double v = coeffs.values[static_cast<std::size_t>(j - 1)];
    sum += v * v;
  }
  return sum;
}

double penalty_weight(int n, double gamma) {
  if (n < 3) throw std::invalid_argument("penalty_weight: n must be >= 3");
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("penalty_weight: gamma must be > 0");
  }
  return 1.0 / (3.0 + std::pow(std::log(static_cast<double>(n)), gamma));
}

double penalty(const WeightVector& lambda, double zeta, int n) {
  if (zeta < 0.0) throw std::invalid_argument("penalty: zeta_hat must be >= 0");
  return lambda.sq_norm() * zeta / static_cast<double>(n);
}

double cost(const WeightVector& lambda, const FourierCoeffs& coeffs,
            double zeta, double rho) {
  if (lambda.values.size() != coeffs.values.size()) {
    throw std::invalid_argument("cost: weight/coefficient length mismatch");
  }
  if (!(rho > 0.0) || !(rho < 1.0 / 3.0)) {
    throw std::invalid_argument("cost: rho must lie in (0, 1/3)");
  }
  const int n = coeffs.n;
  const double noise_level = zeta / static_cast<double>(n);
  double quad = 0.0, cross = 0.0, sq = 0.0;
  for (std::size_t idx = 0; idx < lambda.values.size(); ++idx) {
    const double l = lambda.values[idx];
    if (l == 0.0) continue;
    const double th2 = coeffs.values[idx] * coeffs.values[idx];
    quad += l * l * th2;
    cross += l * (th2 - noise_level);
    sq += l * l;
  }
  return quad - 2.0 * cross + rho * sq * zeta / static_cast<double>(n);
}

double kappa(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0 / 3.0)) {
    throw std::invalid_argument("kappa: rho must lie in (0, 1/3)");
  }
  return (6.0 * rho - 2.0 * rho * rho) / (1.0 - 3.0 * rho);
}

Estimate reconstruct(const WeightVector& lambda, const FourierCoeffs& coeffs,
                     const DesignGrid& grid) {
  if (lambda.values.size() != coeffs.values.size() ||
      coeffs.n != grid.n) {
    throw std::invalid_argument("reconstruct: length mismatch");
  }
  Estimate est;
  est.weight = lambda;
  est.coefficients.resize(coeffs.values.size());
  for (std::size_t idx = 0; idx < coeffs.values.size(); ++idx) {
    est.coefficients[idx] = lambda.values[idx] * coeffs.values[idx];
  }
  est.fitted = synthesize(est.coefficients, grid);
  return est;
}

CandidateFamily::CandidateFamily(int n) : grid_(weight_grid(n)) {
  vectors_.reserve(grid_.indices.size());
  for (const WeightIndex& alpha : grid_.indices) {
    vectors_.push_back(weight_vector(alpha, n));
  }
}

std::size_t CandidateFamily::select_index(const FourierCoeffs& coeffs,
                                          double rho, double* zeta_out,
                                          std::vector<double>* costs_out) const {
  if (coeffs.n != grid_.n) {
    throw std::invalid_argument("select_index: coefficients from another grid");
  }
  const double zeta = zeta_hat(coeffs);
  if (zeta_out) *zeta_out = zeta;
  if (costs_out) costs_out->resize(vectors_.size());

  std::size_t best = 0;
  double best_cost = 0.0;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const double c = cost(vectors_[i], coeffs, zeta, rho);
    if (costs_out) (*costs_out)[i] = c;
    // strict < keeps the lexicographically smallest (beta, t) on ties since
    // the grid is already in that order
    if (i == 0 || c < best_cost) {
      best = i;
      best_cost = c;
    }
  }
  return best;
}

std::shared_ptr<const CandidateFamily> shared_candidate_family(int n) {
  static std::mutex mutex;
  static std::map<int, std::weak_ptr<const CandidateFamily>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto hit = cache[n].lock()) return hit;
  auto fresh = std::make_shared<const CandidateFamily>(n);
  cache[n] = fresh;
  return fresh;
}

SelectOutput select(std::span<const double> y, const DesignGrid& grid,
                    double gamma) {
  const FourierCoeffs coeffs = fourier_transform(y, grid);
  const auto family = shared_candidate_family(grid.n);
  const double rho = penalty_weight(grid.n, gamma);

  double zeta = 0.0;
  std::vector<double> costs;
  const std::size_t best = family->select_index(coeffs, rho, &zeta, &costs);

  SelectOutput out;
  out.selection.chosen = family->grid().indices[best];
  out.selection.cost = costs[best];
  out.selection.zeta_hat = zeta;
  out.selection.rho = rho;
  out.selection.all_costs.reserve(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    out.selection.all_costs.emplace_back(family->grid().indices[i], costs[i]);
  }
  out.estimate = reconstruct(family->vectors()[best], coeffs, grid);
  return out;
}

ReferenceResult reference_estimator(const ModelSpec& spec,
                                    std::span<const double> y,
                                    const DesignGrid& grid) {
  const double varsigma_S = varsigma(spec.scale, spec.S);
  if (!(varsigma_S > 0.0)) {
    throw std::runtime_error("reference_estimator: varsigma(S) must be > 0");
  }
  const WeightGrid wg = weight_grid(grid.n);
  const double r_bar = spec.ball.r / varsigma_S;

  // smallest i >= 1 with i*eps >= r_bar, clamped at m
  int i = static_cast<int>(std::ceil(r_bar / wg.eps));
  if (i < 1) i = 1;
  ReferenceResult out;
  out.r_bar = r_bar;
  out.clamped = i > wg.m;
  if (i > wg.m) i = wg.m;

  out.alpha = {spec.ball.k, i, static_cast<double>(i) * wg.eps};
  const FourierCoeffs coeffs = fourier_transform(y, grid);
  out.estimate = reconstruct(weight_vector(out.alpha, grid.n), coeffs, grid);
  return out;
}

}  // namespace pinsker
