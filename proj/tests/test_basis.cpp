#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "pinsker/basis.hpp"
#include "pinsker/models.hpp"

using namespace pinsker;

namespace {

// brute-force empirical inner product in long double, independent of the
// library path
long double brute_inner(int i, int j, int n) {
  long double sum = 0.0L;
  for (int l = 1; l <= n; ++l) {
    const long double x = static_cast<long double>(l) / n;
    const auto eval = [&](int idx) -> long double {
      if (idx == 1) return 1.0L;
      const long double arg = 2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>(idx / 2) * x;
      return std::sqrt(2.0L) * (idx % 2 == 0 ? std::cos(arg) : std::sin(arg));
    };
    sum += eval(i) * eval(j);
  }
  return sum / n;
}

}  // namespace

TEST_CASE("design grid invariants") {
  const DesignGrid grid(25);
  CHECK(grid.n == 25);
  CHECK(grid.points.front() == doctest::Approx(1.0 / 25).epsilon(1e-15));
  CHECK(grid.points.back() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t l = 1; l < grid.points.size(); ++l) {
    CHECK(grid.points[l] > grid.points[l - 1]);
  }
  CHECK_THROWS_AS(DesignGrid(24), std::invalid_argument);
  CHECK_THROWS_AS(DesignGrid(1), std::invalid_argument);
}

TEST_CASE("phi point values") {
  CHECK(phi(1, 0.3) == 1.0);
  CHECK(phi(2, 0.25) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(phi(3, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(phi(3, 0.25) == doctest::Approx(1.4142136).epsilon(1e-6));
  CHECK_THROWS_AS(phi(0, 0.5), std::invalid_argument);
}

TEST_CASE("empirical inner product matches brute force") {
  const DesignGrid g25(25);
  CHECK(empirical_inner(phi_samples(1, g25), phi_samples(1, g25), g25) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const double cross = empirical_inner(phi_samples(2, g25), phi_samples(3, g25), g25);
  CHECK(std::fabs(cross - static_cast<double>(brute_inner(2, 3, 25))) < 1e-12);
  CHECK(std::fabs(cross) < 1e-12);

  const DesignGrid g101(101);
  const double diag = empirical_inner(phi_samples(5, g101), phi_samples(5, g101), g101);
  CHECK(std::fabs(diag - 1.0) < 1e-12);

  std::vector<double> short_vec(10, 0.0);
  CHECK_THROWS_AS(empirical_inner(short_vec, phi_samples(1, g25), g25),
                  std::invalid_argument);
}

TEST_CASE("orthonormality for odd n") {
  for (int n : {25, 51, 101}) {
    const DesignGrid grid(n);
    const BasisTable table(grid);
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        double sum = 0.0;
        for (int l = 1; l <= n; ++l) sum += table.at(i, l) * table.at(j, l);
        sum /= n;
        worst = std::max(worst, std::fabs(sum - (i == j ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("fourier transform basics") {
  const DesignGrid grid(25);

  std::vector<double> zeros(25, 0.0);
  for (double v : fourier_transform(zeros, grid).values) CHECK(v == 0.0);

  const FourierCoeffs pure = fourier_transform(phi_samples(3, grid), grid);
  for (int j = 1; j <= 25; ++j) {
    const double want = j == 3 ? 1.0 : 0.0;
    CHECK(std::fabs(pure.values[static_cast<std::size_t>(j - 1)] - want) < 1e-12);
  }

  std::vector<double> mix(25);
  const std::vector<double> phi2 = phi_samples(2, grid);
  for (int l = 0; l < 25; ++l) mix[static_cast<std::size_t>(l)] = 2.0 + phi2[static_cast<std::size_t>(l)];
  const FourierCoeffs mixed = fourier_transform(mix, grid);
  CHECK(std::fabs(mixed.values[0] - 2.0) < 1e-12);
  CHECK(std::fabs(mixed.values[1] - 1.0) < 1e-12);
  for (int j = 3; j <= 25; ++j) {
    CHECK(std::fabs(mixed.values[static_cast<std::size_t>(j - 1)]) < 1e-12);
  }
}

TEST_CASE("synthesis inverts the transform and Parseval holds") {
  const DesignGrid grid(51);
  std::vector<double> y(51);
  for (int l = 0; l < 51; ++l) {
    const double x = grid.points[static_cast<std::size_t>(l)];
    y[static_cast<std::size_t>(l)] = std::exp(x) + 0.3 * std::sin(9.0 * x);
  }
  const FourierCoeffs coeffs = fourier_transform(y, grid);
  const std::vector<double> back = synthesize(coeffs.values, grid);
  double norm_y = 0.0, norm_coeff = 0.0;
  for (int l = 0; l < 51; ++l) {
    CHECK(std::fabs(back[static_cast<std::size_t>(l)] - y[static_cast<std::size_t>(l)]) < 1e-9);
    norm_y += y[static_cast<std::size_t>(l)] * y[static_cast<std::size_t>(l)];
    norm_coeff += coeffs.values[static_cast<std::size_t>(l)] *
                  coeffs.values[static_cast<std::size_t>(l)];
  }
  norm_y /= 51.0;
  CHECK(std::fabs(norm_coeff - norm_y) < 1e-9);

  // BasisTable path agrees with the direct path
  const BasisTable table(grid);
  const FourierCoeffs fast = table.transform(y);
  for (int j = 0; j < 51; ++j) {
    CHECK(fast.values[static_cast<std::size_t>(j)] ==
          doctest::Approx(coeffs.values[static_cast<std::size_t>(j)]).epsilon(1e-14));
  }
}

TEST_CASE("sobolev coefficients") {
  CHECK(sobolev_coeff(1, 1) == 1.0);
  const long double want2 =
      1.0L + std::pow(2.0L * std::numbers::pi_v<long double>, 2.0L);
  CHECK(sobolev_coeff(2, 1) ==
        doctest::Approx(static_cast<double>(want2)).epsilon(1e-14));
  CHECK(sobolev_coeff(2, 1) == doctest::Approx(40.4784).epsilon(1e-5));
  CHECK(sobolev_coeff(3, 1) == sobolev_coeff(2, 1));
  CHECK(sobolev_coeff(1, 3) == 1.0);
  CHECK_THROWS_AS(sobolev_coeff(0, 1), std::invalid_argument);
}

TEST_CASE("ellipsoid membership") {
  const SobolevBall ball(1, 1.0);
  std::vector<double> zero(5, 0.0);
  const EllipsoidCheck trivially = ellipsoid_membership(zero, ball);
  CHECK(trivially.value == 0.0);
  CHECK(trivially.inside);

  std::vector<double> phi2_coeff(2, 0.0);
  phi2_coeff[1] = 1.0;
  const EllipsoidCheck outside = ellipsoid_membership(phi2_coeff, ball);
  CHECK(outside.value == doctest::Approx(40.478).epsilon(1e-3));
  CHECK_FALSE(outside.inside);

  // boundary: c chosen so a_2 c^2 = r
  const double c = std::sqrt(ball.r / sobolev_coeff(2, 1));
  std::vector<double> boundary(2, 0.0);
  boundary[1] = c;
  const EllipsoidCheck edge = ellipsoid_membership(boundary, ball);
  CHECK(edge.value == doctest::Approx(ball.r).epsilon(1e-12));
  CHECK(edge.inside == (edge.value <= ball.r));
}

TEST_CASE("L2 Fourier coefficients via quadrature") {
  CHECK(fourier_coeff_l2([](double x) { return phi(3, x); }, 3) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fourier_coeff_l2([](double x) { return phi(3, x); }, 2) ==
        doctest::Approx(0.0).epsilon(1e-10));
  // sin(2 pi x) = phi_3 / sqrt(2)
  CHECK(fourier_coeff_l2([](double x) { return std::sin(2.0 * std::numbers::pi * x); }, 3) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("lemma A.2 partial sums, reduced range") {
  // |sum_{l=2}^N l^m (phi_l^2(x) - 1)| <= 2^m N^m
  for (int m : {0, 1, 2}) {
    for (int N : {2, 3, 10, 50}) {
      for (int gx = 0; gx <= 200; ++gx) {
        const double x = static_cast<double>(gx) / 200.0;
        double sum = 0.0;
        for (int l = 2; l <= N; ++l) {
          const double p = phi(l, x);
          sum += std::pow(l, m) * (p * p - 1.0);
        }
        CHECK(std::fabs(sum) <= std::pow(2.0 * N, m) + 1e-9);
      }
    }
  }
}

TEST_CASE("lemma A.3 and A.1 for the library, reduced range") {
  const SobolevBall ball(1, 1.0);
  for (const LibraryFunction& f : function_library(ball)) {
    for (int n : {25, 101}) {
      const DesignGrid grid(n);
      std::vector<double> samples(static_cast<std::size_t>(n));
      for (int l = 1; l <= n; ++l) {
        samples[static_cast<std::size_t>(l - 1)] =
            f(grid.points[static_cast<std::size_t>(l - 1)]);
      }
      const FourierCoeffs theta_n = fourier_transform(samples, grid);

      // A.3: |theta_{j,n} - vartheta_j| <= 2 pi sqrt(r) j / n
      for (int j = 1; j <= n; ++j) {
        const double vartheta =
            j <= static_cast<int>(f.coeffs.size())
                ? f.coeffs[static_cast<std::size_t>(j - 1)]
                : 0.0;
        const double bound =
            2.0 * std::numbers::pi * std::sqrt(ball.r) * j / n;
        CHECK(std::fabs(theta_n.values[static_cast<std::size_t>(j - 1)] -
                        vartheta) <= bound + 1e-12);
      }

      // A.1: m^{2k} sum_{j>m} theta_{j,n}^2 <= 4 r / pi^{2(k-1)}, k = 1
      for (int m = 1; m < n; ++m) {
        double tail = 0.0;
        for (int j = m + 1; j <= n; ++j) {
          tail += theta_n.values[static_cast<std::size_t>(j - 1)] *
                  theta_n.values[static_cast<std::size_t>(j - 1)];
        }
        CHECK(static_cast<double>(m) * m * tail <= 4.0 * ball.r + 1e-9);
      }
    }
  }
}
