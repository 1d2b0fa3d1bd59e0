#include "pinsker/models.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pinsker/quadrature.hpp"

namespace pinsker {

ScaleFamily ScaleFamily::goldfeld_quandt(double c0, double c1, double c2) {
  if (!(c0 > 0.0) || c1 < 0.0 || c2 < 0.0) {
    throw std::invalid_argument(
        "ScaleFamily: Goldfeld-Quandt needs c0 > 0 and c1, c2 >= 0");
  }
  ScaleFamily fam;
  fam.kind_ = Kind::GoldfeldQuandt;
  fam.c0_ = c0;
  fam.c1_ = c1;
  fam.c2_ = c2;
  return fam;
}

ScaleFamily ScaleFamily::general(GeneralScale gen) {
  if (!gen.G || !gen.Gy || !gen.V || !gen.Vdot) {
    throw std::invalid_argument("ScaleFamily: general family needs G, Gy, V, Vdot");
  }
  ScaleFamily fam;
  fam.kind_ = Kind::General;
  fam.gen_ = std::move(gen);
  return fam;
}

double ScaleFamily::v_integral(const RealFunction& S) const {
  if (kind_ == Kind::GoldfeldQuandt) return 0.0;
  return simpson([&](double t) { return gen_.V(S(t)); }, 0.0, 1.0, 4097);
}

double ScaleFamily::g2_at(double x, double s_x, double v_int) const {
  if (kind_ == Kind::GoldfeldQuandt) return c0_ + c1_ * x + c2_ * s_x * s_x;
  return gen_.G(x, s_x) + v_int;
}

double ScaleFamily::g2(double x, const RealFunction& S) const {
  const double value = g2_at(x, S(x), v_integral(S));
  // general families may degenerate to zero (noise-free test hook); a
  // negative value is always a modelling error
  if (value < 0.0) {
    throw std::runtime_error("ScaleFamily: g^2(x, S) is negative");
  }
  return value;
}

double ScaleFamily::gy_at(double x, double s_x) const {
  if (kind_ == Kind::GoldfeldQuandt) return 2.0 * c2_ * s_x;
  return gen_.Gy(x, s_x);
}

double ScaleFamily::v_at(double y) const {
  if (kind_ == Kind::GoldfeldQuandt) return 0.0;
  return gen_.V(y);
}

double ScaleFamily::vdot_at(double y) const {
  if (kind_ == Kind::GoldfeldQuandt) return 0.0;
  return gen_.Vdot(y);
}

double scale_value(const ScaleFamily& family, double x, const RealFunction& S) {
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("scale_value: x must lie in [0,1]");
  }
  return std::sqrt(family.g2(x, S));
}

double varsigma(const ScaleFamily& family, const RealFunction& S) {
  const double v_int = family.v_integral(S);
  return simpson([&](double x) { return family.g2_at(x, S(x), v_int); }, 0.0,
                 1.0, 4097);
}

double riemann_gap(const ScaleFamily& family, const RealFunction& S, int n) {
  if (n < 1) throw std::invalid_argument("riemann_gap: n must be >= 1");
  const double v_int = family.v_integral(S);
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(n);
    sum += family.g2_at(x, S(x), v_int);
  }
  return std::fabs(sum / static_cast<double>(n) - varsigma(family, S));
}

double frechet_L(const ScaleFamily& family, double x, const RealFunction& S,
                 const RealFunction& f) {
  double value = family.gy_at(x, S(x)) * f(x);
  if (family.kind() == ScaleFamily::Kind::General) {
    value += simpson([&](double t) { return family.vdot_at(S(t)) * f(t); },
                     0.0, 1.0, 4097);
  }
  return value;
}

std::string NoiseDensity::name() const {
  switch (tag) {
    case Tag::Gaussian:
      return "gaussian";
    case Tag::ScaledUniform:
      return "uniform";
    case Tag::ScaledStudentT:
      return "student_t" + std::to_string(nu);
  }
  return "unknown";
}

NoiseDensity NoiseDensity::gaussian() { return {Tag::Gaussian, 0, 3.0}; }

NoiseDensity NoiseDensity::scaled_uniform() {
  // xi = sqrt(3) U(-1,1): E xi^4 = 9/5
  return {Tag::ScaledUniform, 0, 9.0 / 5.0};
}

NoiseDensity NoiseDensity::scaled_student_t(int nu) {
  if (nu < 5) {
    throw std::invalid_argument(
        "NoiseDensity: Student-t needs nu >= 5 for a controlled fourth moment");
  }
  // standardized t_nu: E xi^4 = 3 (nu - 2) / (nu - 4)
  const double m4 = 3.0 * (nu - 2.0) / (nu - 4.0);
  return {Tag::ScaledStudentT, nu, m4};
}

NoiseDensity NoiseDensity::from_name(const std::string& name) {
  if (name == "gaussian") return gaussian();
  if (name == "uniform") return scaled_uniform();
  if (name.rfind("student_t", 0) == 0) {
    const std::string arg = name.substr(9);
    return scaled_student_t(arg.empty() ? 5 : std::stoi(arg));
  }
  throw std::invalid_argument("NoiseDensity: unknown density '" + name + "'");
}

std::vector<double> sample_noise(const NoiseDensity& density, int count,
                                 RngStream& rng) {
  if (count < 1) throw std::invalid_argument("sample_noise: count must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  switch (density.tag) {
    case NoiseDensity::Tag::Gaussian:
      for (double& x : out) x = rng.normal();
      break;
    case NoiseDensity::Tag::ScaledUniform: {
      const double a = std::sqrt(3.0);
      for (double& x : out) x = rng.uniform(-a, a);
      break;
    }
    case NoiseDensity::Tag::ScaledStudentT: {
      if (density.nu < 5) {
        throw std::invalid_argument("sample_noise: Student-t needs nu >= 5");
      }
      // T = Z / sqrt(W/nu), W = sum of nu squared normals; xi = T sqrt((nu-2)/nu)
      const double scale = std::sqrt((density.nu - 2.0) / density.nu);
      for (double& x : out) {
        const double z = rng.normal();
        double w = 0.0;
        for (int i = 0; i < density.nu; ++i) {
          const double g = rng.normal();
          w += g * g;
        }
        x = z / std::sqrt(w / density.nu) * scale;
      }
      break;
    }
  }
  return out;
}

std::vector<double> simulate(const ModelSpec& spec, const DesignGrid& grid,
                             RngStream& rng) {
  const std::vector<double> xi = sample_noise(spec.noise, grid.n, rng);
  const double v_int = spec.scale.v_integral(spec.S);
  std::vector<double> y(static_cast<std::size_t>(grid.n));
  for (int j = 1; j <= grid.n; ++j) {
    const double x = grid.points[static_cast<std::size_t>(j - 1)];
    const double s = spec.S(x);
    const double g2 = spec.scale.g2_at(x, s, v_int);
    if (g2 < 0.0) {
      throw std::runtime_error("simulate: g^2(x, S) is negative");
    }
    y[static_cast<std::size_t>(j - 1)] =
        s + std::sqrt(g2) * xi[static_cast<std::size_t>(j - 1)];
  }
  return y;
}

double LibraryFunction::operator()(double x) const {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == 0.0) continue;
    sum += coeffs[idx] * phi(static_cast<int>(idx) + 1, x);
  }
  return sum;
}

RealFunction LibraryFunction::fn() const {
  LibraryFunction copy = *this;
  return [copy](double x) { return copy(x); };
}

namespace {

LibraryFunction scaled_series(int id, std::string name,
                              std::vector<double> shape,
                              const SobolevBall& ball, double fill) {
  double value = 0.0;
  for (std::size_t idx = 0; idx < shape.size(); ++idx) {
    value += sobolev_coeff(static_cast<int>(idx) + 1, ball.k) * shape[idx] *
             shape[idx];
  }
  const double scale = std::sqrt(fill * ball.r / value);
  for (double& c : shape) c *= scale;
  LibraryFunction out;
  out.id = id;
  out.name = std::move(name);
  out.coeffs = std::move(shape);
  out.sobolev_value = fill * ball.r;
  return out;
}

}  // namespace

LibraryFunction library_function(int id, const SobolevBall& ball, double fill) {
  if (!(fill > 0.0) || fill > 1.0) {
    throw std::invalid_argument("library_function: fill must be in (0, 1]");
  }
  switch (id) {
    case 1: {
      // A sin(2 pi x) = (A / sqrt(2)) phi_3
      std::vector<double> shape(3, 0.0);
      shape[2] = 1.0;
      return scaled_series(1, "s1", std::move(shape), ball, fill);
    }
    case 2: {
      // A (sin(2 pi x) + cos(4 pi x) / 2)
      std::vector<double> shape(4, 0.0);
      shape[2] = 1.0;              // sin(2 pi x) / sqrt(2) factor absorbed
      shape[3] = 0.5;              // cos(4 pi x) = phi_4 / sqrt(2)
      return scaled_series(2, "s2", std::move(shape), ball, fill);
    }
    case 3: {
      // Seeded random series, coefficients damped by sqrt(a_j) and frequency.
      RngStream rng(0x5eed5eedULL, {3});
      std::vector<double> shape(25, 0.0);
      for (int j = 2; j <= 25; ++j) {
        const double u = rng.uniform(-1.0, 1.0);
        const double freq = static_cast<double>(j / 2);
        shape[static_cast<std::size_t>(j - 1)] =
            u / (std::sqrt(sobolev_coeff(j, ball.k)) * freq);
      }
      return scaled_series(3, "s3", std::move(shape), ball, fill);
    }
    default:
      throw std::invalid_argument("library_function: id must be 1, 2 or 3");
  }
}

std::vector<LibraryFunction> function_library(const SobolevBall& ball,
                                              double fill) {
  return {library_function(1, ball, fill), library_function(2, ball, fill),
          library_function(3, ball, fill)};
}

ModelSpec make_model(const LibraryFunction& f, const ScaleFamily& scale,
                     const NoiseDensity& noise, const SobolevBall& ball) {
  const EllipsoidCheck check = ellipsoid_membership(f.coeffs, ball);
  if (!check.inside) {
    throw std::invalid_argument("make_model: function lies outside the ball");
  }
  ModelSpec spec;
  spec.S = f.fn();
  spec.s_name = f.name;
  spec.scale = scale;
  spec.noise = noise;
  spec.ball = ball;
  return spec;
}

}  // namespace pinsker
