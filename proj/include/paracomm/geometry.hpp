#pragma once

// Parabolic metric structure of the plane: anisotropic dilations
// delta_rho(x1,x2) = (rho*x1, rho^2*x2), the quasi-norm |x1|+|x2|^{1/2},
// anisotropic cubes of dimensions r x r^2, and the model curve
// gamma_sigma(t) = (t*sigma1, t^2*sigma2).

#include <array>
#include <cmath>
#include <stdexcept>

namespace paracomm {

struct ParaPoint {
  double x1 = 0.0;
  double x2 = 0.0;

  ParaPoint operator+(const ParaPoint& o) const { return {x1 + o.x1, x2 + o.x2}; }
  ParaPoint operator-(const ParaPoint& o) const { return {x1 - o.x1, x2 - o.x2}; }
  bool operator==(const ParaPoint& o) const = default;
};

// Direction pair for the curve. Need not be a unit vector: the operator
// modules default to (1,1), while circle quadrature uses unit directions.
struct Sigma {
  double s1 = 1.0;
  double s2 = 1.0;

  bool is_unit(double tol = 1e-12) const {
    return std::abs(s1 * s1 + s2 * s2 - 1.0) <= tol;
  }
};

inline Sigma unit_sigma(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// |x1| + |x2|^{1/2}; homogeneous of degree 1 under the parabolic dilations.
inline double para_norm(const ParaPoint& p) {
  return std::abs(p.x1) + std::sqrt(std::abs(p.x2));
}

inline ParaPoint dilate(const ParaPoint& p, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("dilate: rho must be positive");
  return {rho * p.x1, rho * rho * p.x2};
}

/// Point on the curve gamma_sigma(t) = (t*s1, t^2*s2).
inline ParaPoint curve_point(double t, const Sigma& sigma) {
  return {t * sigma.s1, t * t * sigma.s2};
}

inline ParaPoint curve_point(double t) { return {t, t * t}; }

struct PolarCoords {
  double rho = 0.0;
  Sigma sigma;
};

// Parabolic polar coordinates: x1 = rho*s1, x2 = rho^2*s2 with (s1,s2) on the
// unit circle. rho is the positive root of rho^4 - x1^2 rho^2 - x2^2 = 0,
// taken in closed form.
inline PolarCoords to_polar(const ParaPoint& p) {
  if (p.x1 == 0.0 && p.x2 == 0.0)
    throw std::invalid_argument("to_polar: origin has no polar coordinates");
  const double a = p.x1 * p.x1;
  const double rho2 = 0.5 * (a + std::sqrt(a * a + 4.0 * p.x2 * p.x2));
  const double rho = std::sqrt(rho2);
  return {rho, {p.x1 / rho, p.x2 / rho2}};
}

inline ParaPoint from_polar(const PolarCoords& pc) {
  return {pc.rho * pc.sigma.s1, pc.rho * pc.rho * pc.sigma.s2};
}

/// Area element factor in parabolic polar coordinates: dx = rho^2 (1+s2^2) drho dsigma.
inline double polar_weight(const PolarCoords& pc) {
  return pc.rho * pc.rho * (1.0 + pc.sigma.s2 * pc.sigma.s2);
}

// Anisotropic cube [a-r/2, a+r/2) x [b-r^2/2, b+r^2/2), volume r^3.
// Half-open so dyadic children tile the parent without overlap.
struct ParaCube {
  double a = 0.0;
  double b = 0.0;
  double r = 1.0;

  ParaCube(double a_, double b_, double r_) : a(a_), b(b_), r(r_) {
    if (!(r > 0.0)) throw std::invalid_argument("ParaCube: scale must be positive");
  }

  double volume() const { return r * r * r; }

  bool contains(const ParaPoint& p) const {
    const double r2 = r * r;
    return p.x1 >= a - 0.5 * r && p.x1 < a + 0.5 * r &&
           p.x2 >= b - 0.5 * r2 && p.x2 < b + 0.5 * r2;
  }

  // Children of scale r/2 tiling the parent exactly: the parent splits into
  // 2 slabs in x1 and 4 in x2 (child height (r/2)^2 is a quarter of r^2).
  std::array<ParaCube, 8> children() const {
    const double rc = 0.5 * r;
    const double hc = rc * rc;  // child height
    std::array<ParaCube, 8> out = {ParaCube(a, b, rc), ParaCube(a, b, rc),
                                   ParaCube(a, b, rc), ParaCube(a, b, rc),
                                   ParaCube(a, b, rc), ParaCube(a, b, rc),
                                   ParaCube(a, b, rc), ParaCube(a, b, rc)};
    int k = 0;
    for (int i = 0; i < 2; ++i) {
      const double ca = a + (i == 0 ? -0.25 * r : 0.25 * r);
      for (int j = 0; j < 4; ++j) {
        const double cb = b - 0.5 * r * r + (j + 0.5) * hc;
        out[k].a = ca;
        out[k].b = cb;
        ++k;
      }
    }
    return out;
  }
};

}  // namespace paracomm
