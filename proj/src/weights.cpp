#include "pinsker/weights.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pinsker {

double a_beta(int beta) {
  if (beta < 1) throw std::invalid_argument("a_beta: beta must be >= 1");
  const double b = static_cast<double>(beta);
  return (b + 1.0) * (2.0 * b + 1.0) /
         (std::pow(std::numbers::pi, 2.0 * b) * b);
}

double omega(const WeightIndex& alpha, int n) {
  if (n < 3) throw std::invalid_argument("omega: n must be >= 3");
  if (alpha.beta < 1 || !(alpha.t > 0.0)) {
    throw std::invalid_argument("omega: invalid weight index");
  }
  const double b = static_cast<double>(alpha.beta);
  return std::pow(a_beta(alpha.beta) * alpha.t * static_cast<double>(n),
                  1.0 / (2.0 * b + 1.0));
}

WeightGrid weight_grid(int n) {
  if (n < 3) throw std::invalid_argument("weight_grid: n must be >= 3");
  WeightGrid grid;
  grid.n = n;
  grid.eps = 1.0 / std::log(static_cast<double>(n));
  grid.k_star = static_cast<int>(std::floor(1.0 / std::sqrt(grid.eps)));
  grid.m = static_cast<int>(std::floor(1.0 / (grid.eps * grid.eps)));
  if (grid.k_star < 1) grid.k_star = 1;
  if (grid.m < 1) grid.m = 1;
  const long long size =
      static_cast<long long>(grid.k_star) * static_cast<long long>(grid.m);
  if (size > 1000000LL) {
    throw std::runtime_error("weight_grid: candidate family exceeds 10^6");
  }
  grid.indices.reserve(static_cast<std::size_t>(size));
  for (int beta = 1; beta <= grid.k_star; ++beta) {
    for (int i = 1; i <= grid.m; ++i) {
      grid.indices.push_back({beta, i, static_cast<double>(i) * grid.eps});
    }
  }
  return grid;
}

double WeightVector::sq_norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return sum;
}

WeightVector weight_vector(const WeightIndex& alpha, int n) {
  WeightVector out;
  out.index = alpha;
  out.omega = omega(alpha, n);
  out.j0 = static_cast<int>(std::floor(out.omega / std::log(static_cast<double>(n))));
  out.values.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j <= n; ++j) {
    double v = 0.0;
    if (j <= out.j0) {
      v = 1.0;
    } else if (static_cast<double>(j) <= out.omega) {
      v = 1.0 - std::pow(static_cast<double>(j) / out.omega,
                         static_cast<double>(alpha.beta));
    }
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out.values[static_cast<std::size_t>(j - 1)] = v;
  }
  return out;
}

}  // namespace pinsker
