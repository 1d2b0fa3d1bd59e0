#include "pinsker/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pinsker/parallel.hpp"
#include "pinsker/quadrature.hpp"

namespace pinsker {

namespace {
constexpr double kPi = std::numbers::pi;

double raw_bump(double u) {
  if (std::fabs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double bump_norm() {
  static const double z = simpson(raw_bump, -1.0, 1.0, 8193);
  return z;
}
}  // namespace

double bump_kernel(double u) { return raw_bump(u) / bump_norm(); }

KernelProfile::KernelProfile(double eta_in) : eta(eta_in) {
  if (!(eta > 0.0) || !(eta < 0.5)) {
    throw std::invalid_argument("KernelProfile: eta must lie in (0, 1/2)");
  }
}

double KernelProfile::kernel_I(double x) const {
  // substitute w = (u - x)/eta: integrate V over
  // [-1, 1] cut down to |x + eta w| <= 1 - eta
  const double lo = std::max(-1.0, (-(1.0 - eta) - x) / eta);
  const double hi = std::min(1.0, ((1.0 - eta) - x) / eta);
  if (lo >= hi) return 0.0;
  double value = simpson(bump_kernel, lo, hi, 2049);
  return std::clamp(value, 0.0, 1.0);
}

double e_basis(int j, double x) {
  if (j < 1) throw std::invalid_argument("e_basis: index must be >= 1");
  if (j == 1) return 1.0 / std::numbers::sqrt2;
  const double arg = kPi * static_cast<double>(j / 2) * x;
  return j % 2 == 0 ? std::cos(arg) : std::sin(arg);
}

double e_bar(int j, const std::function<double(double)>& f) {
  return simpson(
      [&](double v) {
        const double e = e_basis(j, v);
        return e * e * f(v);
      },
      -1.0, 1.0, 4097);
}

namespace {
double power_sum(int N, int p) {
  double sum = 0.0;
  for (int j = 1; j <= N; ++j) sum += std::pow(static_cast<double>(j), p);
  return sum;
}
}  // namespace

double waterfill_min_R(int N, int k) {
  if (N < 1 || k < 1) {
    throw std::invalid_argument("waterfill: N and k must be >= 1");
  }
  return std::pow(static_cast<double>(N), k) * power_sum(N, k) -
         power_sum(N, 2 * k);
}

std::vector<double> waterfill(int N, int k, double R) {
  const double min_R = waterfill_min_R(N, k);
  if (R < min_R) {
    throw std::invalid_argument(
        "waterfill: infeasible budget R = " + std::to_string(R) +
        ", minimal feasible R = " + std::to_string(min_R));
  }
  const double sum_k = power_sum(N, k);
  const double sum_2k = power_sum(N, 2 * k);
  std::vector<double> y(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    y[static_cast<std::size_t>(j - 1)] =
        (R + sum_2k) * std::pow(static_cast<double>(j), -k) / sum_k - 1.0;
    if (y[static_cast<std::size_t>(j - 1)] < 0.0) {
      y[static_cast<std::size_t>(j - 1)] = 0.0;  // roundoff at the boundary
    }
  }
  return y;
}

double waterfill_value(int N, int k, double R) {
  if (N < 1 || k < 1) {
    throw std::invalid_argument("waterfill_value: N and k must be >= 1");
  }
  const double sum_k = power_sum(N, k);
  const double sum_2k = power_sum(N, 2 * k);
  return static_cast<double>(N) - sum_k * sum_k / (R + sum_2k);
}

double c_star_eps(int k, double r, double epsilon, double varsigma0) {
  if (k < 1 || !(r > 0.0) || !(epsilon > 0.0) || !(epsilon < 1.0) ||
      !(varsigma0 > 0.0)) {
    throw std::invalid_argument("c_star_eps: invalid parameters");
  }
  return std::pow(2.0, 2 * k + 1) * (1.0 - epsilon) * r /
         (std::pow(kPi, 2 * k) * varsigma0);
}

double v_star_eps(int k, double r, double epsilon, double varsigma0) {
  const double c = c_star_eps(k, r, epsilon, varsigma0);
  const double kd = static_cast<double>(k);
  return kd / (c * (kd + 1.0) * (2.0 * kd + 1.0));
}

double h_star(int k, double r, double epsilon, double varsigma0) {
  return std::pow(v_star_eps(k, r, epsilon, varsigma0),
                  1.0 / (2.0 * k + 1.0));
}

double bound_rate_profile(int k, double c_star, double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("bound_rate_profile: x must be > 0");
  }
  const double kd = static_cast<double>(k);
  return 1.0 / x -
         (2.0 * kd + 1.0) /
             ((kd + 1.0) * (kd + 1.0) *
              (c_star * (2.0 * kd + 1.0) * std::pow(x, 2.0 * kd + 2.0) + x));
}

double water_budget(int k, double r, double epsilon, long long n, double h,
                    double g0_hat) {
  if (!(h > 0.0) || !(g0_hat > 0.0)) {
    throw std::invalid_argument("water_budget: h and g0_hat must be > 0");
  }
  const double kd = static_cast<double>(k);
  return std::pow(2.0, 2 * k + 1) * (1.0 - epsilon) * r *
         static_cast<double>(n) * std::pow(h, 2.0 * kd + 1.0) /
         (std::pow(kPi, 2 * k) * g0_hat);
}

PriorDesign design_from_paper(int k, double r, double epsilon, long long n,
                              const ScaleFamily& scale, NRule rule,
                              int fixed_N) {
  if (n < 3) throw std::invalid_argument("design_from_paper: n must be >= 3");
  PriorDesign design;
  design.k = k;
  design.r = r;
  design.epsilon = epsilon;
  design.n = n;

  const RealFunction zero = [](double) { return 0.0; };
  const double v0 = scale.v_integral(zero);
  design.g0 = [scale, v0](double x) {
    return std::sqrt(scale.g2_at(x, 0.0, v0));
  };
  design.varsigma0 = varsigma(scale, zero);

  design.c_star = c_star_eps(k, r, epsilon, design.varsigma0);
  design.v_star = v_star_eps(k, r, epsilon, design.varsigma0);
  design.h_star = h_star(k, r, epsilon, design.varsigma0);

  const double log_n = std::log(static_cast<double>(n));
  switch (rule) {
    case NRule::PaperLn4:
      design.N = static_cast<int>(std::floor(std::pow(log_n, 4.0))) + 1;
      break;
    case NRule::DeskLog:
      design.N = std::max(2, static_cast<int>(std::floor(log_n / 3.0)));
      break;
    case NRule::Fixed:
      if (fixed_N < 1) {
        throw std::invalid_argument("design_from_paper: fixed N must be >= 1");
      }
      design.N = fixed_N;
      break;
  }

  const double kd = static_cast<double>(k);
  design.h = design.h_star *
             std::pow(static_cast<double>(n), -1.0 / (2.0 * kd + 1.0)) *
             static_cast<double>(design.N);
  design.M = static_cast<int>(std::floor(1.0 / (2.0 * design.h))) - 1;
  if (design.M < 1) {
    throw std::invalid_argument(
        "design_from_paper: M_n < 1 (h_n = " + std::to_string(design.h) +
        "); n is too small for this N rule");
  }

  design.centers.resize(static_cast<std::size_t>(design.M));
  design.g0_centers.resize(static_cast<std::size_t>(design.M));
  double g0_sq_sum = 0.0;
  for (int m = 1; m <= design.M; ++m) {
    const double x = 2.0 * m * design.h;
    design.centers[static_cast<std::size_t>(m - 1)] = x;
    const double g0 = design.g0(x);
    design.g0_centers[static_cast<std::size_t>(m - 1)] = g0;
    g0_sq_sum += g0 * g0;
  }
  design.g0_hat = 2.0 * design.h * g0_sq_sum;

  design.R_star = water_budget(k, r, epsilon, n, design.h, design.g0_hat);
  design.y_star = waterfill(design.N, k, design.R_star);

  design.t.assign(static_cast<std::size_t>(design.M),
                  std::vector<double>(static_cast<std::size_t>(design.N)));
  const double root_nh = std::sqrt(static_cast<double>(n) * design.h);
  design.t_star = 0.0;
  for (int m = 1; m <= design.M; ++m) {
    double row_sum = 0.0;
    for (int j = 1; j <= design.N; ++j) {
      const double t = design.g0_centers[static_cast<std::size_t>(m - 1)] /
                       root_nh *
                       std::sqrt(design.y_star[static_cast<std::size_t>(j - 1)]);
      design.t[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)] = t;
      row_sum += t;
    }
    design.t_star = std::max(design.t_star, row_sum);
  }
  design.d = std::sqrt(static_cast<double>(design.N));
  return design;
}

PriorDraw::PriorDraw(const PriorDesign& design, const KernelProfile& profile,
                     RngStream& rng, bool truncate)
    : h_(design.h), M_(design.M), N_(design.N), profile_(profile) {
  theta_.assign(static_cast<std::size_t>(M_),
                std::vector<double>(static_cast<std::size_t>(N_)));
  zeta_ = theta_;
  const double d = design.d;
  for (int m = 0; m < M_; ++m) {
    for (int j = 0; j < N_; ++j) {
      double z = rng.normal();
      if (truncate) {
        while (z * z > d) z = rng.normal();
      }
      if (z * z > d) truncation_ok_ = false;
      zeta_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = z;
      theta_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
          design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] * z;
    }
  }
  sup_bound_ = std::sqrt(d) * design.t_star;
}

double PriorDraw::operator()(double x) const {
  // block windows [(2m-1)h, (2m+1)h] touch only at points where the kernel
  // vanishes, so the nearest center decides
  const int m = static_cast<int>(std::llround(x / (2.0 * h_)));
  if (m < 1 || m > M_) return 0.0;
  const double v = (x - 2.0 * m * h_) / h_;
  if (std::fabs(v) >= 1.0) return 0.0;
  const double kernel = profile_.kernel_I(v);
  if (kernel == 0.0) return 0.0;
  double sum = 0.0;
  for (int j = 1; j <= N_; ++j) {
    sum += theta_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)] *
           e_basis(j, v);
  }
  return sum * kernel;
}

WindowTable window_table(const PriorDesign& design,
                         const KernelProfile& profile,
                         std::span<const double> xs) {
  WindowTable table;
  table.block.resize(xs.size());
  table.v.resize(xs.size());
  table.kernel.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int m = static_cast<int>(std::llround(xs[i] / (2.0 * design.h)));
    double v = 0.0;
    int block = 0;
    if (m >= 1 && m <= design.M) {
      v = (xs[i] - 2.0 * m * design.h) / design.h;
      if (std::fabs(v) < 1.0) block = m;
    }
    table.block[i] = block;
    table.v[i] = block ? v : 0.0;
    table.kernel[i] = block ? profile.kernel_I(v) : 0.0;
  }
  return table;
}

ConditionsReport conditions_check(const PriorDesign& design, double eps0) {
  if (!(eps0 > 0.0)) {
    throw std::invalid_argument("conditions_check: eps0 must be > 0");
  }
  ConditionsReport report;
  report.eps0 = eps0;
  const double kd = static_cast<double>(design.k);
  double sum_2km1 = 0.0;  // t^2 j^{2(k-1)}
  double sum_2k = 0.0;    // t^2 j^{2k}
  double sum_4k = 0.0;    // t^4 j^{4k}
  for (int m = 0; m < design.M; ++m) {
    for (int j = 1; j <= design.N; ++j) {
      const double t2 =
          design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j - 1)] *
          design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j - 1)];
      sum_2km1 += t2 * std::pow(static_cast<double>(j), 2.0 * (kd - 1.0));
      sum_2k += t2 * std::pow(static_cast<double>(j), 2.0 * kd);
      sum_4k += t2 * t2 * std::pow(static_cast<double>(j), 4.0 * kd);
    }
  }
  report.a2_sum = design.d / std::pow(design.h, 2.0 * kd - 1.0) * sum_2km1;
  report.sqrt_d_t_star = std::sqrt(design.d) * design.t_star;
  report.a3_sum = sum_2k / std::pow(design.h, 2.0 * kd - 1.0);
  report.a3_limit = (1.0 - design.epsilon) * design.r *
                    std::pow(2.0 / kPi, 2.0 * kd);
  report.a3_ok = report.a3_sum <= report.a3_limit * (1.0 + 1e-2);
  report.a4_sum = sum_4k / std::pow(design.h, 4.0 * kd - 2.0 + eps0);
  return report;
}

double van_trees_bound(double lambda_grad, double fisher_data,
                       double fisher_scale, double fisher_prior) {
  const double denom = fisher_data + fisher_scale + fisher_prior;
  if (!(denom > 0.0)) {
    throw std::invalid_argument("van_trees_bound: denominator must be > 0");
  }
  return lambda_grad * lambda_grad / denom;
}

BoundComponents bound_components(const PriorDesign& design,
                                 const KernelProfile& profile,
                                 const ScaleFamily& scale, int mc_draws,
                                 std::uint64_t seed) {
  if (mc_draws < 1) {
    throw std::invalid_argument("bound_components: mc_draws must be >= 1");
  }
  const int M = design.M;
  const int N = design.N;
  const long long n = design.n;
  const double h = design.h;

  BoundComponents comp;
  comp.draws = mc_draws;
  comp.F.assign(static_cast<std::size_t>(M),
                std::vector<double>(static_cast<std::size_t>(N), 0.0));
  comp.B = comp.F;
  comp.fisher_prior = comp.F;
  for (int m = 0; m < M; ++m) {
    for (int j = 0; j < N; ++j) {
      const double t =
          design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      comp.fisher_prior[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
          1.0 / (t * t);
    }
  }
  comp.ebar_I.resize(static_cast<std::size_t>(N));
  comp.ebar_I2.resize(static_cast<std::size_t>(N));
  comp.lambda_grad.resize(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    comp.ebar_I[static_cast<std::size_t>(j - 1)] =
        e_bar(j, [&](double v) { return profile.kernel_I(v); });
    comp.ebar_I2[static_cast<std::size_t>(j - 1)] = e_bar(j, [&](double v) {
      const double I = profile.kernel_I(v);
      return I * I;
    });
    comp.lambda_grad[static_cast<std::size_t>(j - 1)] =
        std::sqrt(h) * comp.ebar_I[static_cast<std::size_t>(j - 1)];
  }

  // design-point geometry: block, v, I_eta(v) and e_j(v) per point
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) {
    xs[static_cast<std::size_t>(i - 1)] =
        static_cast<double>(i) / static_cast<double>(n);
  }
  const WindowTable table = window_table(design, profile, xs);
  std::vector<std::vector<std::size_t>> block_points(
      static_cast<std::size_t>(M));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (table.block[i] > 0) {
      block_points[static_cast<std::size_t>(table.block[i] - 1)].push_back(i);
    }
  }
  std::vector<std::vector<double>> e_vals(static_cast<std::size_t>(N),
                                          std::vector<double>(xs.size(), 0.0));
  for (int j = 1; j <= N; ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (table.block[i] > 0) {
        e_vals[static_cast<std::size_t>(j - 1)][i] = e_basis(j, table.v[i]);
      }
    }
  }

  // block-local quadrature grid for the int V'(S) D term of the general
  // family; in v coordinates the geometry is shared by all blocks
  const bool general = scale.kind() == ScaleFamily::Kind::General;
  const int q_nodes = 257;
  std::vector<double> q_v(q_nodes), q_kernel(q_nodes), q_weight(q_nodes);
  std::vector<std::vector<double>> q_e(static_cast<std::size_t>(N),
                                       std::vector<double>(q_nodes));
  if (general) {
    const double dv = 2.0 / (q_nodes - 1);
    for (int q = 0; q < q_nodes; ++q) {
      q_v[static_cast<std::size_t>(q)] = -1.0 + q * dv;
      q_kernel[static_cast<std::size_t>(q)] =
          profile.kernel_I(q_v[static_cast<std::size_t>(q)]);
      double w;  // Simpson weights
      if (q == 0 || q == q_nodes - 1) {
        w = 1.0;
      } else {
        w = q % 2 == 1 ? 4.0 : 2.0;
      }
      q_weight[static_cast<std::size_t>(q)] = w * dv / 3.0;
      for (int j = 1; j <= N; ++j) {
        q_e[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(q)] =
            e_basis(j, q_v[static_cast<std::size_t>(q)]);
      }
    }
  }

  // per-draw contributions; means taken sequentially afterwards
  std::vector<std::vector<std::vector<double>>> f_slots(
      static_cast<std::size_t>(mc_draws));
  std::vector<std::vector<std::vector<double>>> b_slots(
      static_cast<std::size_t>(mc_draws));

  parallel_for(static_cast<std::size_t>(mc_draws), [&](std::size_t dIdx) {
    RngStream rng(seed, {0x10e7b0c5ULL, dIdx});
    const PriorDraw draw(design, profile, rng, /*truncate=*/true);
    const auto& theta = draw.theta();

    // S_theta at every in-window design point
    std::vector<double> s_vals(xs.size(), 0.0);
    for (int m = 0; m < M; ++m) {
      for (std::size_t i : block_points[static_cast<std::size_t>(m)]) {
        double sum = 0.0;
        for (int j = 0; j < N; ++j) {
          sum += theta[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] *
                 e_vals[static_cast<std::size_t>(j)][i];
        }
        s_vals[i] = sum * table.kernel[i];
      }
    }

    // general-family extras: int V(S_theta) and, per (m, j), the
    // int V'(S_theta) D_{m,j} part of the Frechet derivative. S_theta
    // vanishes off the windows, so only the windows deviate from V(0).
    double v_int = 0.0;
    std::vector<std::vector<double>> vdot_term;
    if (general) {
      std::vector<double> s_q(static_cast<std::size_t>(q_nodes));
      vdot_term.assign(static_cast<std::size_t>(M),
                       std::vector<double>(static_cast<std::size_t>(N), 0.0));
      double window_v = 0.0;
      for (int m = 0; m < M; ++m) {
        for (int q = 0; q < q_nodes; ++q) {
          double s = 0.0;
          for (int j = 0; j < N; ++j) {
            s += theta[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] *
                 q_e[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)];
          }
          s *= q_kernel[static_cast<std::size_t>(q)];
          s_q[static_cast<std::size_t>(q)] = s;
          window_v += q_weight[static_cast<std::size_t>(q)] * h * scale.v_at(s);
        }
        for (int j = 0; j < N; ++j) {
          double acc = 0.0;
          for (int q = 0; q < q_nodes; ++q) {
            acc += q_weight[static_cast<std::size_t>(q)] *
                   scale.vdot_at(s_q[static_cast<std::size_t>(q)]) *
                   q_e[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)] *
                   q_kernel[static_cast<std::size_t>(q)];
          }
          vdot_term[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
              acc * h;
        }
      }
      v_int = window_v +
              scale.v_at(0.0) * (1.0 - 2.0 * h * static_cast<double>(M));
    }

    std::vector<std::vector<double>> f_draw(
        static_cast<std::size_t>(M),
        std::vector<double>(static_cast<std::size_t>(N), 0.0));
    std::vector<std::vector<double>> b_draw = f_draw;

    for (int m = 0; m < M; ++m) {
      for (std::size_t i : block_points[static_cast<std::size_t>(m)]) {
        const double x = xs[i];
        const double s = s_vals[i];
        const double g2 = scale.g2_at(x, s, v_int);
        const double g2_inv = 1.0 / g2;
        const double gy = scale.gy_at(x, s);
        for (int j = 0; j < N; ++j) {
          const double D =
              e_vals[static_cast<std::size_t>(j)][i] * table.kernel[i];
          f_draw[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +=
              D * D * g2_inv;
          double L = gy * D;
          if (general) {
            L += vdot_term[static_cast<std::size_t>(m)]
                          [static_cast<std::size_t>(j)];
          }
          b_draw[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +=
              (L * g2_inv) * (L * g2_inv);
        }
      }
    }
    f_slots[dIdx] = std::move(f_draw);
    b_slots[dIdx] = std::move(b_draw);
  });

  for (int d = 0; d < mc_draws; ++d) {
    for (int m = 0; m < M; ++m) {
      for (int j = 0; j < N; ++j) {
        comp.F[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +=
            f_slots[static_cast<std::size_t>(d)][static_cast<std::size_t>(m)]
                   [static_cast<std::size_t>(j)];
        comp.B[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +=
            b_slots[static_cast<std::size_t>(d)][static_cast<std::size_t>(m)]
                   [static_cast<std::size_t>(j)];
      }
    }
  }
  comp.F_ratio = comp.F;
  comp.B_ratio = comp.B;
  const double nh = static_cast<double>(n) * h;
  for (int m = 0; m < M; ++m) {
    for (int j = 0; j < N; ++j) {
      auto& F = comp.F[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      auto& B = comp.B[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      F /= mc_draws;
      B = 0.5 * B / mc_draws;
      comp.F_ratio[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
          F / nh;
      comp.B_ratio[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
          B / nh;
    }
  }
  return comp;
}

BayesBound bayes_lower_bound(const PriorDesign& design,
                             const KernelProfile& profile,
                             const BoundComponents& components) {
  (void)profile;
  BayesBound bound;
  const double h = design.h;
  const double nh = static_cast<double>(design.n) * h;
  for (int m = 0; m < design.M; ++m) {
    const double g0 = design.g0_centers[static_cast<std::size_t>(m)];
    double tau_sum = 0.0;
    for (int j = 0; j < design.N; ++j) {
      const double t =
          design.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      const double lambda =
          components.lambda_grad[static_cast<std::size_t>(j)];
      bound.double_sum += van_trees_bound(
          lambda,
          components.F[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)],
          components.B[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)],
          1.0 / (t * t));
      const double kappa2 = nh / (g0 * g0) * t * t;
      tau_sum += kappa2 / (kappa2 + 1.0);
    }
    bound.tau_form += g0 * g0 * tau_sum;
  }
  bound.tau_form /= static_cast<double>(design.n);
  return bound;
}

}  // namespace pinsker
