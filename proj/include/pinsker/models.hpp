#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pinsker/basis.hpp"
#include "pinsker/rng.hpp"

namespace pinsker {

using RealFunction = std::function<double(double)>;

// General scale family g^2(x, S) = G(x, S(x)) + int_0^1 V(S(t)) dt together
// with the derivative data for its Frechet derivative
//   L_{x,S}(f) = G_y(x, S(x)) f(x) + int_0^1 V'(S(t)) f(t) dt.
struct GeneralScale {
  std::function<double(double, double)> G;   // (x, y) -> G(x, y)
  std::function<double(double, double)> Gy;  // dG/dy
  RealFunction V;                            // y -> V(y)
  RealFunction Vdot;                         // y -> V'(y)
};

// Scale of the observation noise, sigma_j(S) = g(x_j, S). Two kinds:
// the Goldfeld-Quandt family g^2 = c0 + c1 x + c2 S(x)^2 and the general
// family above. The Goldfeld-Quandt family is the general one with
// G = c0 + c1 x + c2 y^2 and V = 0, and is routed through that representation
// wherever the Frechet derivative is needed.
class ScaleFamily {
 public:
  enum class Kind { GoldfeldQuandt, General };

  ScaleFamily() = default;  // unit constant scale, g^2 == 1

  static ScaleFamily goldfeld_quandt(double c0, double c1, double c2);
  static ScaleFamily general(GeneralScale gen);

  Kind kind() const { return kind_; }
  double c0() const { return c0_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  // g^2(x, S); for the general family this includes the int V(S) term.
  double g2(double x, const RealFunction& S) const;

  // int_0^1 V(S(t)) dt; zero for Goldfeld-Quandt. Hot loops integrate once
  // per S and then use g2_at.
  double v_integral(const RealFunction& S) const;

  // g^2 given S(x) and a precomputed int V(S).
  double g2_at(double x, double s_x, double v_int) const;

  // dG/dy at (x, S(x))
  double gy_at(double x, double s_x) const;
  double v_at(double y) const;
  double vdot_at(double y) const;

 private:
  Kind kind_ = Kind::GoldfeldQuandt;
  double c0_ = 1.0, c1_ = 0.0, c2_ = 0.0;
  GeneralScale gen_;
};

// g(x, S) = sqrt(g^2(x, S))
double scale_value(const ScaleFamily& family, double x, const RealFunction& S);

// varsigma(S) = int_0^1 g^2(x, S) dx (composite Simpson, 4097 nodes)
double varsigma(const ScaleFamily& family, const RealFunction& S);

// |n^{-1} sum_j g^2(x_j, S) - varsigma(S)|, the Riemann-sum diagnostic.
double riemann_gap(const ScaleFamily& family, const RealFunction& S, int n);

// Frechet derivative L_{x,S}(f) of g^2(x, .) for the general family (the
// Goldfeld-Quandt case reduces to 2 c2 S(x) f(x)).
double frechet_L(const ScaleFamily& family, double x, const RealFunction& S,
                 const RealFunction& f);

// Noise distributions, all centered with unit variance:
//   Gaussian, uniform on [-sqrt(3), sqrt(3)], scaled Student-t with integer
//   nu >= 5 (the fourth moment must exist and be controlled).
struct NoiseDensity {
  enum class Tag { Gaussian, ScaledUniform, ScaledStudentT };

  Tag tag = Tag::Gaussian;
  int nu = 0;
  double fourth_moment = 3.0;

  std::string name() const;

  static NoiseDensity gaussian();
  static NoiseDensity scaled_uniform();
  static NoiseDensity scaled_student_t(int nu);
  static NoiseDensity from_name(const std::string& name);
};

std::vector<double> sample_noise(const NoiseDensity& density, int count,
                                 RngStream& rng);

// Everything needed to generate data: y_j = S(x_j) + g(x_j, S) xi_j.
struct ModelSpec {
  RealFunction S;
  std::string s_name;
  ScaleFamily scale;
  NoiseDensity noise;
  SobolevBall ball{1, 1.0};
};

std::vector<double> simulate(const ModelSpec& spec, const DesignGrid& grid,
                             RngStream& rng);

// Test regression functions: finite trigonometric series scaled so the
// Sobolev ellipsoid value equals fill * r for the requested ball.
//   1: A sin(2 pi x)
//   2: A (sin(2 pi x) + cos(4 pi x) / 2)
//   3: seeded random series with a_j-weighted coefficient decay
struct LibraryFunction {
  int id = 0;
  std::string name;
  std::vector<double> coeffs;  // vartheta_j, j = 1..coeffs.size()
  double sobolev_value = 0.0;

  double operator()(double x) const;
  RealFunction fn() const;
};

LibraryFunction library_function(int id, const SobolevBall& ball,
                                 double fill = 0.9);
std::vector<LibraryFunction> function_library(const SobolevBall& ball,
                                              double fill = 0.9);

// Bundles a library function with scale/noise/ball; rejects functions whose
// ellipsoid value exceeds r.
ModelSpec make_model(const LibraryFunction& f, const ScaleFamily& scale,
                     const NoiseDensity& noise, const SobolevBall& ball);

}  // namespace pinsker
