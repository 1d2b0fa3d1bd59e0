#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "pinsker/lowerbound.hpp"
#include "pinsker/quadrature.hpp"
#include "pinsker/risk.hpp"

using namespace pinsker;

namespace {

const ScaleFamily kUnitScale = ScaleFamily::goldfeld_quandt(1.0, 0.0, 0.0);

// independent water-filling route: bisection on the Lagrange multiplier of
// max sum y/(y+1) s.t. sum y_j j^{2k} = R, y >= 0; stationarity gives
// y_j(mu) = max(0, (mu j^{2k})^{-1/2} - 1)
std::vector<double> waterfill_bisection(int N, int k, double R) {
  auto budget = [&](double mu) {
    double used = 0.0;
    for (int j = 1; j <= N; ++j) {
      const double w = std::pow(static_cast<double>(j), 2 * k);
      const double y = std::max(0.0, 1.0 / std::sqrt(mu * w) - 1.0);
      used += y * w;
    }
    return used;
  };
  double lo = 1e-18, hi = 1.0;
  while (budget(hi) > R) hi *= 2.0;
  while (budget(lo) < R) lo /= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (budget(mid) > R ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  std::vector<double> y(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    const double w = std::pow(static_cast<double>(j), 2 * k);
    y[static_cast<std::size_t>(j - 1)] = std::max(0.0, 1.0 / std::sqrt(mu * w) - 1.0);
  }
  return y;
}

double tau_sum(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v / (v + 1.0);
  return s;
}

}  // namespace

TEST_CASE("bump kernel integrates to one") {
  CHECK(simpson(bump_kernel, -1.0, 1.0, 8193) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bump_kernel(1.0) == 0.0);
  CHECK(bump_kernel(-1.2) == 0.0);
  CHECK(bump_kernel(0.0) > 0.0);
}

TEST_CASE("kernel plateau and support") {
  for (double eta : {0.2, 0.1, 0.05}) {
    const KernelProfile profile(eta);
    CHECK(profile.kernel_I(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(profile.kernel_I(1.1) == 0.0);
    CHECK(profile.kernel_I(-1.1) == 0.0);
    for (int i = 0; i <= 400; ++i) {
      const double x = -1.2 + 2.4 * i / 400.0;
      const double v = profile.kernel_I(x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      if (std::fabs(x) <= 1.0 - 2.0 * eta) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
      if (std::fabs(x) >= 1.0) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(KernelProfile(0.5), std::invalid_argument);
  CHECK_THROWS_AS(KernelProfile(0.0), std::invalid_argument);

  // int I_eta^m -> 2 as eta -> 0, monotone across the ladder
  for (int m : {1, 2}) {
    double prev = 1e300;
    for (double eta : {0.2, 0.1, 0.05}) {
      const KernelProfile profile(eta);
      const double value = simpson(
          [&](double x) { return std::pow(profile.kernel_I(x), m); }, -1.0,
          1.0, 513);
      const double gap = std::fabs(value - 2.0);
      CHECK(gap < prev);
      prev = gap;
    }
  }
}

TEST_CASE("e basis on [-1,1]") {
  CHECK(e_basis(1, 0.37) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(e_basis(1, -0.8) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(e_basis(2, 0.0) == 1.0);
  for (int j = 1; j <= 10; ++j) {
    const double norm = simpson(
        [&](double v) {
          const double e = e_basis(j, v);
          return e * e;
        },
        -1.0, 1.0, 4097);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("e_bar quadrature") {
  for (int j : {1, 2, 5}) {
    CHECK(e_bar(j, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
  }
  const KernelProfile profile(0.1);
  const double i_mass = simpson([&](double x) { return profile.kernel_I(x); }, -1.0, 1.0, 513);
  CHECK(e_bar(1, [&](double v) { return profile.kernel_I(v); }) ==
        doctest::Approx(0.5 * i_mass).epsilon(1e-8));

  double prev = 0.0;
  for (double eta : {0.2, 0.1, 0.05}) {
    const KernelProfile p(eta);
    const double value = e_bar(3, [&](double v) {
      const double I = p.kernel_I(v);
      return I * I;
    });
    CHECK(value > prev);
    CHECK(value <= 1.0 + 1e-10);
    prev = value;
  }
}

TEST_CASE("waterfill closed form") {
  {
    const std::vector<double> y = waterfill(2, 1, 7.0);
    CHECK(y[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(y[0] * 1.0 + y[1] * 4.0 == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(tau_sum(y) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(waterfill_value(2, 1, 7.0) == doctest::Approx(1.25).epsilon(1e-12));
    // J*_N(R) = N - (sum j^k)^2/(R + sum j^{2k}) = 2 - 9/12
    CHECK(waterfill_value(2, 1, 7.0) == doctest::Approx(2.0 - 9.0 / 12.0).epsilon(1e-15));
  }
  {
    const std::vector<double> y = waterfill(1, 1, 1.0);
    CHECK(y.size() == 1);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_WITH_AS(waterfill(3, 1, 1.0), doctest::Contains("minimal feasible"),
                       std::invalid_argument);
}

TEST_CASE("waterfill optimality") {
  RngStream rng(31, {});
  for (int N : {1, 2, 3, 5, 10}) {
    for (int k : {1, 2}) {
      const double min_R = waterfill_min_R(N, k);
      for (int t = 0; t < 5; ++t) {
        const double R = min_R * (1.0 + rng.uniform(0.0, 3.0)) + 1.0;
        const std::vector<double> best = waterfill(N, k, R);

        // constraint holds with equality
        double used = 0.0;
        for (int j = 1; j <= N; ++j) {
          used += best[static_cast<std::size_t>(j - 1)] *
                  std::pow(static_cast<double>(j), 2 * k);
        }
        CHECK(used == doctest::Approx(R).epsilon(1e-12));

        // agrees with the independent bisection route
        const std::vector<double> numeric = waterfill_bisection(N, k, R);
        for (int j = 0; j < N; ++j) {
          CHECK(std::fabs(best[static_cast<std::size_t>(j)] -
                          numeric[static_cast<std::size_t>(j)]) < 1e-6);
        }

        // no random feasible competitor does better
        const double best_value = tau_sum(best);
        for (int c = 0; c < 1000; ++c) {
          std::vector<double> y(static_cast<std::size_t>(N));
          double weight = 0.0;
          for (int j = 1; j <= N; ++j) {
            y[static_cast<std::size_t>(j - 1)] = rng.uniform01() + 1e-12;
            weight += y[static_cast<std::size_t>(j - 1)] *
                      std::pow(static_cast<double>(j), 2 * k);
          }
          const double scale = R / weight;
          for (double& v : y) v *= scale;
          CHECK(tau_sum(y) <= best_value + 1e-7);
        }
      }
    }
  }
}

TEST_CASE("J*/N window") {
  for (int k : {1, 2}) {
    const double lo = static_cast<double>(k) * k / ((k + 1.0) * (k + 1.0)) - 0.05;
    for (int N : {10, 50, 200}) {
      const double min_R = waterfill_min_R(N, k);
      for (double R : {0.5 * min_R, min_R, 2.0 * min_R, 10.0 * min_R}) {
        const double ratio = waterfill_value(N, k, R) / N;
        CHECK(ratio >= lo);
        CHECK(ratio <= 1.0);
      }
    }
  }
}

TEST_CASE("design constants at the worked configuration") {
  // k = 1, eps = 1/2, r = 1, varsigma0 = 1
  const long double pi = std::numbers::pi_v<long double>;
  const long double c_want = 8.0L * 0.5L / (pi * pi);
  const long double v_want = 1.0L / (6.0L * c_want);
  const long double h_want = std::pow(v_want, 1.0L / 3.0L);

  CHECK(c_star_eps(1, 1.0, 0.5, 1.0) ==
        doctest::Approx(static_cast<double>(c_want)).epsilon(1e-14));
  CHECK(c_star_eps(1, 1.0, 0.5, 1.0) == doctest::Approx(0.40528).epsilon(1e-4));
  CHECK(v_star_eps(1, 1.0, 0.5, 1.0) ==
        doctest::Approx(static_cast<double>(v_want)).epsilon(1e-14));
  CHECK(v_star_eps(1, 1.0, 0.5, 1.0) == doctest::Approx(0.41124).epsilon(1e-4));
  CHECK(h_star(1, 1.0, 0.5, 1.0) ==
        doctest::Approx(static_cast<double>(h_want)).epsilon(1e-14));
  CHECK(h_star(1, 1.0, 0.5, 1.0) == doctest::Approx(0.74367).epsilon(1e-4));
}

TEST_CASE("rate profile F is decreasing with the max at h_star") {
  for (int k : {1, 2}) {
    for (double eps : {0.1, 0.5}) {
      const double c = c_star_eps(k, 1.0, eps, 1.0);
      const double v = v_star_eps(k, 1.0, eps, 1.0);
      const double h = std::pow(v, 1.0 / (2.0 * k + 1.0));

      double prev = bound_rate_profile(k, c, 0.05);
      for (int i = 1; i <= 100; ++i) {
        const double x = 0.05 + i * 0.02;
        const double value = bound_rate_profile(k, c, x);
        const double fd = (bound_rate_profile(k, c, x + 1e-6) - value) / 1e-6;
        CHECK(fd <= 1e-9);
        CHECK(value <= prev + 1e-12);
        prev = value;
      }
      // max over [h*, inf) at h*, with the closed-form value
      const double at_h = bound_rate_profile(k, c, h);
      CHECK(at_h == doctest::Approx(static_cast<double>(k) / (k + 1.0) *
                                    std::pow(v, -1.0 / (2.0 * k + 1.0)))
                        .epsilon(1e-12));
      for (double x = h; x < h + 2.0; x += 0.05) {
        CHECK(bound_rate_profile(k, c, x) <= at_h + 1e-12);
      }
      // (varsigma/2) F(h*) equals the epsilon-deflated Pinsker constant
      const double gamma0 = gamma_k(SobolevBall(k, 1.0), 1.0);
      CHECK(0.5 * at_h == doctest::Approx(std::pow(1.0 - eps, 1.0 / (2.0 * k + 1.0)) *
                                          gamma0)
                              .epsilon(1e-12));
    }
  }
}

TEST_CASE("prior design from the paper recipe") {
  const PriorDesign design =
      design_from_paper(1, 1.0, 0.1, 10000, kUnitScale, NRule::DeskLog);
  CHECK(design.N == 3);
  CHECK(design.M == 4);
  CHECK(design.h == doctest::Approx(design.h_star * 3.0 / std::cbrt(10000.0)).epsilon(1e-12));
  CHECK(design.g0_hat == doctest::Approx(2.0 * design.h * design.M).epsilon(1e-12));
  CHECK(design.d == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  // R* via the explicit budget and the design agree
  CHECK(design.R_star ==
        doctest::Approx(water_budget(1, 1.0, 0.1, 10000, design.h, design.g0_hat))
            .epsilon(1e-14));

  // the A3 identity: h^{-(2k-1)} sum t^2 j^{2k} = (1-eps) r (2/pi)^{2k}
  const ConditionsReport conditions = conditions_check(design);
  CHECK(conditions.a3_sum ==
        doctest::Approx(conditions.a3_limit).epsilon(1e-10));
  CHECK(conditions.a3_ok);

  // t matrix matches (8.15)
  for (int m = 0; m < design.M; ++m) {
    for (int j = 0; j < design.N; ++j) {
      const double want = design.g0_centers[static_cast<std::size_t>(m)] /
                          std::sqrt(10000.0 * design.h) *
                          std::sqrt(design.y_star[static_cast<std::size_t>(j)]);
      CHECK(design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] ==
            doctest::Approx(want).epsilon(1e-14));
    }
  }

  // the asymptotic N rule is infeasible at desk scale
  CHECK_THROWS_AS(design_from_paper(1, 1.0, 0.1, 10000, kUnitScale, NRule::PaperLn4),
                  std::invalid_argument);

  // the budget (8.13) is decreasing in eps at fixed h
  double prev = 1e300;
  for (double eps : {0.1, 0.3, 0.5, 0.7}) {
    const double R = water_budget(1, 1.0, eps, 10000, 0.1, 1.0);
    CHECK(R < prev);
    prev = R;
  }
}

TEST_CASE("conditions ladder") {
  // sqrt(d_n) t*_n decreasing across the n ladder at the paper design
  double prev = 1e300;
  for (long long n : {1000LL, 10000LL, 100000LL}) {
    const PriorDesign design =
        design_from_paper(1, 1.0, 0.1, n, kUnitScale, NRule::DeskLog);
    const ConditionsReport report = conditions_check(design);
    CHECK(report.sqrt_d_t_star < prev);
    prev = report.sqrt_d_t_star;
    CHECK(report.a3_ok);
  }

  // all-zero t matrix: every sum vanishes
  PriorDesign zeroed =
      design_from_paper(1, 1.0, 0.1, 10000, kUnitScale, NRule::DeskLog);
  for (auto& row : zeroed.t) {
    for (double& t : row) t = 0.0;
  }
  zeroed.t_star = 0.0;
  const ConditionsReport silent = conditions_check(zeroed);
  CHECK(silent.a2_sum == 0.0);
  CHECK(silent.a3_sum == 0.0);
  CHECK(silent.a4_sum == 0.0);
  CHECK(silent.sqrt_d_t_star == 0.0);
  CHECK(silent.a3_ok);
}

TEST_CASE("van Trees bound") {
  CHECK(van_trees_bound(0.0, 1.0, 2.0, 3.0) == 0.0);
  CHECK_THROWS_AS(van_trees_bound(1.0, 0.0, 0.0, 0.0), std::invalid_argument);

  // conjugate Gaussian location: the bound matches the exact Bayes risk
  for (double n : {10.0, 1000.0}) {
    for (double sigma : {0.5, 2.0}) {
      for (double t : {0.3, 1.5}) {
        const double bound =
            van_trees_bound(1.0, n / (sigma * sigma), 0.0, 1.0 / (t * t));
        const double exact = sigma * sigma * t * t / (n * t * t + sigma * sigma);
        CHECK(bound == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }

  // decreasing in each information term
  CHECK(van_trees_bound(1.0, 2.0, 0.5, 1.0) > van_trees_bound(1.0, 3.0, 0.5, 1.0));
  CHECK(van_trees_bound(1.0, 2.0, 0.5, 1.0) > van_trees_bound(1.0, 2.0, 1.5, 1.0));
  CHECK(van_trees_bound(1.0, 2.0, 0.5, 1.0) > van_trees_bound(1.0, 2.0, 0.5, 2.0));
}

TEST_CASE("prior draws") {
  const KernelProfile profile(0.1);
  PriorDesign design =
      design_from_paper(1, 1.0, 0.1, 10000, kUnitScale, NRule::DeskLog);

  {
    PriorDesign zeroed = design;
    for (auto& row : zeroed.t) {
      for (double& t : row) t = 0.0;
    }
    RngStream rng(1, {});
    const PriorDraw draw(zeroed, profile, rng);
    for (int i = 0; i <= 50; ++i) {
      CHECK(draw(i / 50.0) == 0.0);
    }
  }

  {
    // a single nonzero (m, j) localizes the function to its window
    PriorDesign single = design;
    for (auto& row : single.t) {
      for (double& t : row) t = 0.0;
    }
    single.t[1][0] = 1.0;
    RngStream rng(2, {});
    const PriorDraw draw(single, profile, rng);
    const double lo = single.centers[1] - single.h;
    const double hi = single.centers[1] + single.h;
    bool saw_nonzero = false;
    for (int i = 0; i <= 400; ++i) {
      const double x = i / 400.0;
      const double v = draw(x);
      if (x < lo || x > hi) {
        CHECK(v == 0.0);
      } else {
        saw_nonzero = saw_nonzero || v != 0.0;
      }
    }
    CHECK(saw_nonzero);
  }

  {
    // truncated draws respect the sup-norm bound sqrt(d) t*
    RngStream rng(3, {});
    for (int rep = 0; rep < 20; ++rep) {
      const PriorDraw draw(design, profile, rng, /*truncate=*/true);
      CHECK(draw.truncation_ok());
      double sup = 0.0;
      for (int i = 0; i <= 200; ++i) {
        sup = std::max(sup, std::fabs(draw(i / 200.0)));
      }
      CHECK(sup <= draw.sup_bound() + 1e-12);
    }
  }

  {
    // identical streams give identical draws
    RngStream a(9, {4}), b(9, {4});
    const PriorDraw da(design, profile, a);
    const PriorDraw db(design, profile, b);
    CHECK(da.theta() == db.theta());
  }

  {
    // window table agrees with direct evaluation
    RngStream rng(5, {});
    const PriorDraw draw(design, profile, rng);
    std::vector<double> xs;
    for (int i = 0; i <= 97; ++i) xs.push_back(i / 97.0);
    const WindowTable table = window_table(design, profile, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double expect = 0.0;
      if (table.block[i] > 0) {
        for (int j = 1; j <= design.N; ++j) {
          expect += draw.theta()[static_cast<std::size_t>(table.block[i] - 1)]
                                [static_cast<std::size_t>(j - 1)] *
                    e_basis(j, table.v[i]);
        }
        expect *= table.kernel[i];
      }
      CHECK(draw(xs[i]) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("bound components for constant scale") {
  const KernelProfile profile(0.1);
  const PriorDesign design =
      design_from_paper(1, 1.0, 0.1, 2001, kUnitScale, NRule::DeskLog);
  const BoundComponents comp = bound_components(design, profile, kUnitScale, 10, 77);

  for (int m = 0; m < design.M; ++m) {
    for (int j = 0; j < design.N; ++j) {
      // S-independent scale: the Frechet derivative vanishes identically
      CHECK(comp.B[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] == 0.0);
      // F/(nh) ~ ebar_j(I^2) / g0^2 with g0 = 1
      CHECK(comp.F_ratio[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] ==
            doctest::Approx(comp.ebar_I2[static_cast<std::size_t>(j)]).epsilon(0.03));
      CHECK(comp.fisher_prior[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] ==
            doctest::Approx(1.0 / (design.t[static_cast<std::size_t>(m)]
                                           [static_cast<std::size_t>(j)] *
                                   design.t[static_cast<std::size_t>(m)]
                                           [static_cast<std::size_t>(j)]))
                .epsilon(1e-12));
    }
  }
  for (int j = 0; j < design.N; ++j) {
    CHECK(comp.lambda_grad[static_cast<std::size_t>(j)] ==
          doctest::Approx(std::sqrt(design.h) * comp.ebar_I[static_cast<std::size_t>(j)])
              .epsilon(1e-12));
  }
}

TEST_CASE("bayes bound routes agree as eta shrinks") {
  // With constant scale the two routes differ only through the tau_j vs
  // tau-bar distortion controlled by the e-bar deviations; the deviation
  // bound shrinks to zero with eta and the measured gap stays below it.
  const PriorDesign design =
      design_from_paper(1, 1.0, 0.1, 10000, kUnitScale, NRule::DeskLog);

  double prev_bound = 1e300;
  for (double eta : {0.2, 0.1, 0.05, 0.02}) {
    const KernelProfile profile(eta);
    const BoundComponents comp = bound_components(design, profile, kUnitScale, 5, 5);
    const BayesBound bound = bayes_lower_bound(design, profile, comp);
    CHECK(bound.double_sum > 0.0);
    CHECK(bound.tau_form > 0.0);

    double worst_dev = 0.0, min_ebar2 = 1e300;
    for (int j = 0; j < design.N; ++j) {
      const double e1 = comp.ebar_I[static_cast<std::size_t>(j)];
      const double e2 = comp.ebar_I2[static_cast<std::size_t>(j)];
      worst_dev = std::max(worst_dev, std::fabs(e1 * e1 - e2) + std::fabs(e1 * e1 - 1.0));
      min_ebar2 = std::min(min_ebar2, e2);
    }
    const double distortion_bound = worst_dev / min_ebar2;
    const double measured = std::fabs(bound.double_sum / bound.tau_form - 1.0);
    // small slack on top of the distortion bound for the finite-n Riemann
    // error inside F
    CHECK(measured <= distortion_bound + 0.01);
    CHECK(distortion_bound < prev_bound);
    prev_bound = distortion_bound;
    if (eta == 0.02) CHECK(measured <= 0.05);
  }

  // all variances to near-zero: both routes collapse
  const KernelProfile profile(0.05);
  PriorDesign zeroed = design;
  for (auto& row : zeroed.t) {
    for (double& t : row) t = 1e-9;
  }
  const BoundComponents z_comp = bound_components(zeroed, profile, kUnitScale, 2, 5);
  const BayesBound z_bound = bayes_lower_bound(zeroed, profile, z_comp);
  CHECK(z_bound.tau_form < 1e-12);
  CHECK(z_bound.double_sum < 1e-12);
}

TEST_CASE("prior membership surrogate") {
  // Proposition 7.2 at desk scale: the empirical fraction of prior draws
  // leaving the ball stays under 10%. Config chosen where the finite-n edge
  // terms do not drown the asymptotics: eps = 0.5, eta = 0.45.
  const double r = 1.0;
  const KernelProfile profile(0.45);
  const PriorDesign design =
      design_from_paper(1, r, 0.5, 10000, kUnitScale, NRule::DeskLog);

  const int grid_size = 1 << 14;
  std::vector<double> xs(static_cast<std::size_t>(grid_size + 1));
  for (int i = 0; i <= grid_size; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid_size;
  }
  const WindowTable table = window_table(design, profile, xs);
  std::vector<std::vector<double>> e_vals(
      static_cast<std::size_t>(design.N),
      std::vector<double>(xs.size(), 0.0));
  for (int j = 1; j <= design.N; ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (table.block[i] > 0) {
        e_vals[static_cast<std::size_t>(j - 1)][i] = e_basis(j, table.v[i]);
      }
    }
  }

  const int draws = 500;
  int exceed = 0;
  for (int d = 0; d < draws; ++d) {
    RngStream rng(4242, {static_cast<std::uint64_t>(d)});
    const PriorDraw draw(design, profile, rng);
    std::vector<double> s(xs.size(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (table.block[i] == 0) continue;
      double sum = 0.0;
      for (int j = 0; j < design.N; ++j) {
        sum += draw.theta()[static_cast<std::size_t>(table.block[i] - 1)]
                           [static_cast<std::size_t>(j)] *
               e_vals[static_cast<std::size_t>(j)][i];
      }
      s[i] = sum * table.kernel[i];
    }
    // ||S'||^2 by central differences and a Riemann sum
    double norm = 0.0;
    for (int i = 1; i < grid_size; ++i) {
      const double fd = (s[static_cast<std::size_t>(i + 1)] -
                         s[static_cast<std::size_t>(i - 1)]) *
                        grid_size / 2.0;
      norm += fd * fd;
    }
    norm /= grid_size;
    if (norm > r) ++exceed;
  }
  CHECK(static_cast<double>(exceed) / draws <= 0.10);
}
