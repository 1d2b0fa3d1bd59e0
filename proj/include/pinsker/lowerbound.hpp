#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pinsker/models.hpp"
#include "pinsker/rng.hpp"

namespace pinsker {

// Normalized C^infinity bump on (-1, 1) with unit integral,
// V(u) = exp(-1/(1-u^2)) / Z.
double bump_kernel(double u);

// Mollified plateau function
//   I_eta(x) = eta^{-1} int 1_{(|u| <= 1-eta)} V((u-x)/eta) du,
// which equals 1 on |x| <= 1-2 eta, vanishes for |x| >= 1 and lies in [0,1].
struct KernelProfile {
  double eta;

  explicit KernelProfile(double eta);
  double kernel_I(double x) const;
};

// Trigonometric basis of L2[-1,1]: e_1 = 1/sqrt(2), e_j(x) = cos(pi [j/2] x)
// for even j, sin(pi [j/2] x) for odd j >= 3.
double e_basis(int j, double x);

// e-bar_j(f) = int_{-1}^{1} e_j(v)^2 f(v) dv
double e_bar(int j, const std::function<double(double)>& f);

// Water-filling: maximize sum_j y_j/(y_j + 1) subject to
// sum_j y_j j^{2k} = R, y >= 0. Closed form
//   y*_j = (R + sum_i i^{2k}) j^{-k} / sum_i i^k - 1,
// valid (all entries >= 0) once R >= N^k sum_i i^k - sum_i i^{2k}.
std::vector<double> waterfill(int N, int k, double R);
double waterfill_min_R(int N, int k);
// J*_N(R) = N - (sum_j j^k)^2 / (R + sum_j j^{2k}) = sum_j y*_j/(y*_j + 1)
double waterfill_value(int N, int k, double R);

// Constants of the prior design:
//   c*_eps = 2^{2k+1} (1-eps) r / (pi^{2k} varsigma0)
//   v*_eps = k / (c*_eps (k+1)(2k+1))
//   h*     = (v*_eps)^{1/(2k+1)}
double c_star_eps(int k, double r, double epsilon, double varsigma0);
double v_star_eps(int k, double r, double epsilon, double varsigma0);
double h_star(int k, double r, double epsilon, double varsigma0);

// F(x) = 1/x - (2k+1) / ((k+1)^2 (c* (2k+1) x^{2k+2} + x)); decreasing, so
// its maximum over x >= h* sits at h* with value (k/(k+1)) (v*)^{-1/(2k+1)}.
double bound_rate_profile(int k, double c_star, double x);

// Variance budget R*_n = 2^{2k+1} (1-eps) r n h^{2k+1} / (pi^{2k} g0_hat),
// the largest R compatible with the ellipsoid constraint at window width h.
double water_budget(int k, double r, double epsilon, long long n, double h,
                    double g0_hat);

// Choice of the block count N_n: the asymptotic recipe floor(ln^4 n) + 1 is
// hopeless at desk-scale n (it forces h_n past 1/2), so a slow desk rule and
// a fixed rule are provided alongside it.
enum class NRule { PaperLn4, DeskLog, Fixed };

// The section-8 prior construction: window geometry, water-filling variances
// and the truncation level.
struct PriorDesign {
  int k = 1;
  double r = 1.0;
  double epsilon = 0.1;
  long long n = 0;
  double c_star = 0.0;
  double v_star = 0.0;
  double h_star = 0.0;
  int N = 0;                           // N_n
  double h = 0.0;                      // h_n = h* n^{-1/(2k+1)} N_n
  int M = 0;                           // M_n = floor(1/(2h)) - 1
  std::vector<double> centers;         // x~_m = 2 m h
  std::vector<double> g0_centers;      // g0(x~_m)
  double g0_hat = 0.0;                 // 2 h sum_m g0^2(x~_m)
  double varsigma0 = 0.0;              // int g0^2
  double R_star = 0.0;                 // budget (8.13)
  std::vector<double> y_star;          // waterfill at R_star
  std::vector<std::vector<double>> t;  // t[m-1][j-1] > 0
  double d = 0.0;                      // d_n = sqrt(N_n)
  double t_star = 0.0;                 // max_m sum_j t_{m,j}
  std::function<double(double)> g0;    // x -> g(x, 0)
};

PriorDesign design_from_paper(int k, double r, double epsilon, long long n,
                              const ScaleFamily& scale,
                              NRule rule = NRule::PaperLn4, int fixed_N = 0);

// One draw of the random function S_theta(x) = sum_{m,j} theta_{m,j}
// e_j(v_m(x)) I_eta(v_m(x)). With truncate set, the Gaussian multipliers are
// drawn conditionally on zeta^2 <= d_n (per-entry rejection).
class PriorDraw {
 public:
  PriorDraw(const PriorDesign& design, const KernelProfile& profile,
            RngStream& rng, bool truncate = false);

  double operator()(double x) const;
  const std::vector<std::vector<double>>& theta() const { return theta_; }
  const std::vector<std::vector<double>>& zeta() const { return zeta_; }
  bool truncation_ok() const { return truncation_ok_; }
  double sup_bound() const { return sup_bound_; }  // sqrt(d_n) t*_n

 private:
  double h_;
  int M_;
  int N_;
  KernelProfile profile_;
  std::vector<std::vector<double>> theta_;
  std::vector<std::vector<double>> zeta_;
  bool truncation_ok_ = true;
  double sup_bound_ = 0.0;
};

// Per-point window geometry for a set of evaluation points: block index
// (0 when outside every window), local coordinate v_m(x) and I_eta(v_m(x)).
// Hot loops use this instead of re-integrating the kernel.
struct WindowTable {
  std::vector<int> block;
  std::vector<double> v;
  std::vector<double> kernel;
};

WindowTable window_table(const PriorDesign& design, const KernelProfile& profile,
                         std::span<const double> xs);

// Finite-n diagnostics for conditions A1-A4. Only the A3 inequality gets a
// pass/fail verdict; the remaining sums are reported so their decay can be
// inspected across an n-ladder.
struct ConditionsReport {
  double a2_sum = 0.0;         // d/h^{2k-1} sum t^2 j^{2(k-1)}
  double sqrt_d_t_star = 0.0;  // sqrt(d_n) t*_n
  double a3_sum = 0.0;         // h^{-(2k-1)} sum t^2 j^{2k}
  double a3_limit = 0.0;       // (1-eps) r (2/pi)^{2k}
  bool a3_ok = false;          // a3_sum <= a3_limit (1 + 1e-2)
  double a4_sum = 0.0;         // h^{-(4k-2+eps0)} sum t^4 j^{4k}
  double eps0 = 0.5;
};

ConditionsReport conditions_check(const PriorDesign& design, double eps0 = 0.5);

// Van Trees-type bound for one coordinate: Lambda^2 / (F + B + I).
double van_trees_bound(double lambda_grad, double fisher_data,
                       double fisher_scale, double fisher_prior);

// Monte Carlo estimates of the data terms of the bound:
//   F_{m,j} = sum_i D_{m,j}^2(x_i) E g^{-2}(x_i, S_theta)
//   B_{m,j} = (1/2) sum_i E (L_{x_i, S_theta}(D_{m,j}) / g^2(x_i, S_theta))^2
// with the expectations over the (truncated) prior.
struct BoundComponents {
  std::vector<std::vector<double>> F;             // [m][j]
  std::vector<std::vector<double>> B;             // [m][j]
  std::vector<std::vector<double>> fisher_prior;  // t^{-2}
  std::vector<double> lambda_grad;                // sqrt(h) e-bar_j(I_eta)
  std::vector<std::vector<double>> F_ratio;       // F/(n h)
  std::vector<std::vector<double>> B_ratio;       // B/(n h)
  std::vector<double> ebar_I;                     // e-bar_j(I_eta)
  std::vector<double> ebar_I2;                    // e-bar_j(I_eta^2)
  int draws = 0;
};

BoundComponents bound_components(const PriorDesign& design,
                                 const KernelProfile& profile,
                                 const ScaleFamily& scale, int mc_draws,
                                 std::uint64_t seed);

// The Bayes-risk lower bound, in two algebraic routes:
//   double_sum: sum_{m,j} h e-bar_j(I_eta)^2 / (F + B + t^{-2})
//   tau_form:   n^{-1} sum_m g0^2(x~_m) sum_j tau-bar(kappa^2_{m,j}),
//               kappa^2 = n h g0^{-2}(x~_m) t^2, tau-bar(y) = y/(y+1).
struct BayesBound {
  double double_sum = 0.0;
  double tau_form = 0.0;
};

BayesBound bayes_lower_bound(const PriorDesign& design,
                             const KernelProfile& profile,
                             const BoundComponents& components);

}  // namespace pinsker
