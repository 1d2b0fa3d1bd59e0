#include "pinsker/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinsker/quadrature.hpp"

namespace pinsker {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
}  // namespace

DesignGrid::DesignGrid(int n_in) : n(n_in) {
  if (n < 3) throw std::invalid_argument("DesignGrid: n must be >= 3");
  if (n % 2 == 0) {
    throw std::invalid_argument(
        "DesignGrid: n must be odd (basis orthonormality fails otherwise)");
  }
  points.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    points[static_cast<std::size_t>(j - 1)] =
        static_cast<double>(j) / static_cast<double>(n);
  }
}

double phi(int j, double x) {
  if (j < 1) throw std::invalid_argument("phi: basis index must be >= 1");
  if (j == 1) return 1.0;
  const double arg = kTwoPi * static_cast<double>(j / 2) * x;
  return j % 2 == 0 ? kSqrt2 * std::cos(arg) : kSqrt2 * std::sin(arg);
}

std::vector<double> phi_samples(int j, const DesignGrid& grid) {
  std::vector<double> out(grid.points.size());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = phi(j, grid.points[l]);
  return out;
}

double empirical_inner(std::span<const double> f, std::span<const double> g,
                       const DesignGrid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.n);
  if (f.size() != n || g.size() != n) {
    throw std::invalid_argument("empirical_inner: length mismatch with grid");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < n; ++l) sum += f[l] * g[l];
  return sum / static_cast<double>(grid.n);
}

FourierCoeffs fourier_transform(std::span<const double> y,
                                const DesignGrid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.n);
  if (y.size() != n) {
    throw std::invalid_argument("fourier_transform: length mismatch with grid");
  }
  FourierCoeffs out;
  out.n = grid.n;
  out.values.resize(n);
  for (int j = 1; j <= grid.n; ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) sum += y[l] * phi(j, grid.points[l]);
    out.values[static_cast<std::size_t>(j - 1)] =
        sum / static_cast<double>(grid.n);
  }
  return out;
}

std::vector<double> synthesize(std::span<const double> coeffs,
                               const DesignGrid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.n);
  if (coeffs.size() != n) {
    throw std::invalid_argument("synthesize: length mismatch with grid");
  }
  std::vector<double> out(n, 0.0);
  for (int j = 1; j <= grid.n; ++j) {
    const double c = coeffs[static_cast<std::size_t>(j - 1)];
    if (c == 0.0) continue;
    for (std::size_t l = 0; l < n; ++l) out[l] += c * phi(j, grid.points[l]);
  }
  return out;
}

BasisTable::BasisTable(const DesignGrid& grid) : n_(grid.n) {
  values_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (int j = 1; j <= n_; ++j) {
    for (int l = 1; l <= n_; ++l) {
      values_[static_cast<std::size_t>(j - 1) * n_ + (l - 1)] =
          phi(j, grid.points[static_cast<std::size_t>(l - 1)]);
    }
  }
}

FourierCoeffs BasisTable::transform(std::span<const double> y) const {
  if (y.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("BasisTable::transform: length mismatch");
  }
  FourierCoeffs out;
  out.n = n_;
  out.values.resize(static_cast<std::size_t>(n_));
  for (int j = 1; j <= n_; ++j) {
    const double* row = &values_[static_cast<std::size_t>(j - 1) * n_];
    double sum = 0.0;
    for (int l = 0; l < n_; ++l) sum += y[static_cast<std::size_t>(l)] * row[l];
    out.values[static_cast<std::size_t>(j - 1)] = sum / n_;
  }
  return out;
}

std::vector<double> BasisTable::synthesize(std::span<const double> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("BasisTable::synthesize: length mismatch");
  }
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (int j = 1; j <= n_; ++j) {
    const double c = coeffs[static_cast<std::size_t>(j - 1)];
    if (c == 0.0) continue;
    const double* row = &values_[static_cast<std::size_t>(j - 1) * n_];
    for (int l = 0; l < n_; ++l) out[static_cast<std::size_t>(l)] += c * row[l];
  }
  return out;
}

double sobolev_coeff(int j, int k) {
  if (j < 1) throw std::invalid_argument("sobolev_coeff: index must be >= 1");
  if (k < 1) throw std::invalid_argument("sobolev_coeff: smoothness must be >= 1");
  const double base = kTwoPi * static_cast<double>(j / 2);
  double sum = 1.0;  // i = 0 term, 0^0 = 1
  double power = 1.0;
  for (int i = 1; i <= k; ++i) {
    power *= base * base;
    sum += power;
  }
  return sum;
}

SobolevBall::SobolevBall(int k_in, double r_in) : k(k_in), r(r_in) {
  if (k < 1) throw std::invalid_argument("SobolevBall: k must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("SobolevBall: r must be > 0");
}

EllipsoidCheck ellipsoid_membership(std::span<const double> coeffs,
                                    const SobolevBall& ball) {
  double value = 0.0;
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    const double c = coeffs[idx];
    if (c == 0.0) continue;
    value += sobolev_coeff(static_cast<int>(idx) + 1, ball.k) * c * c;
  }
  return {value, value <= ball.r};
}

double fourier_coeff_l2(const std::function<double(double)>& f, int j) {
  if (j < 1) throw std::invalid_argument("fourier_coeff_l2: index must be >= 1");
  return simpson([&](double t) { return f(t) * phi(j, t); }, 0.0, 1.0, 4097);
}

}  // namespace pinsker
