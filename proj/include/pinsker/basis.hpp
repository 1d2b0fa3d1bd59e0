#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pinsker {

// Regular design sieve x_j = j/n, j = 1..n. n must be odd and >= 3: the first
// n trigonometric basis functions are orthonormal for the empirical inner
// product only when n is odd, and everything downstream relies on that. Even
// n is a hard error rather than a silent drop of one point.
struct DesignGrid {
  int n;
  std::vector<double> points;

  explicit DesignGrid(int n);
};

// Trigonometric basis on [0,1]:
//   phi_1(x) = 1,
//   phi_j(x) = sqrt(2) cos(2 pi [j/2] x) for even j,
//   phi_j(x) = sqrt(2) sin(2 pi [j/2] x) for odd j >= 3.
double phi(int j, double x);

std::vector<double> phi_samples(int j, const DesignGrid& grid);

// (f, g)_n = n^{-1} sum_l f(x_l) g(x_l)
double empirical_inner(std::span<const double> f, std::span<const double> g,
                       const DesignGrid& grid);

// Coefficients of the discrete Fourier transform, values[j-1] = (y, phi_j)_n.
struct FourierCoeffs {
  std::vector<double> values;
  int n = 0;
};

// Direct O(n^2) transform; exact inversion for odd n.
FourierCoeffs fourier_transform(std::span<const double> y,
                                const DesignGrid& grid);

// S(x_l) = sum_j coeffs[j-1] phi_j(x_l)
std::vector<double> synthesize(std::span<const double> coeffs,
                               const DesignGrid& grid);

// Dense phi_j(x_l) table. Monte Carlo loops transform thousands of samples on
// the same grid; building the trigonometric values once makes the transform a
// plain dot product.
class BasisTable {
 public:
  explicit BasisTable(const DesignGrid& grid);

  double at(int j, int l) const {  // 1-based indices
    return values_[static_cast<std::size_t>(j - 1) * n_ + (l - 1)];
  }
  int n() const { return n_; }

  FourierCoeffs transform(std::span<const double> y) const;
  std::vector<double> synthesize(std::span<const double> coeffs) const;

 private:
  int n_;
  std::vector<double> values_;
};

// a_j = sum_{i=0}^{k} (2 pi [j/2])^{2i}, with the 0^0 = 1 convention so that
// a_1 = 1 (the constant term of the Sobolev norm).
double sobolev_coeff(int j, int k);

struct SobolevBall {
  int k;     // smoothness, >= 1
  double r;  // radius, > 0

  SobolevBall(int k, double r);
};

struct EllipsoidCheck {
  double value;  // sum_j a_j coeffs_j^2 over the supplied coefficients
  bool inside;   // value <= r
};

// Ellipsoid form of the Sobolev ball, evaluated on the supplied (possibly
// truncated) sequence of L2[0,1] Fourier coefficients.
EllipsoidCheck ellipsoid_membership(std::span<const double> coeffs,
                                    const SobolevBall& ball);

// vartheta_j = int_0^1 f(t) phi_j(t) dt, composite Simpson with 4097 nodes.
double fourier_coeff_l2(const std::function<double(double)>& f, int j);

}  // namespace pinsker
