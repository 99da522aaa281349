#include "paracomm/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "paracomm/quadrature.hpp"

namespace paracomm {

Field2D& Field2D::operator+=(const Field2D& o) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}
Field2D& Field2D::operator-=(const Field2D& o) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}
Field2D& Field2D::operator*=(cplx c) {
  for (auto& z : v) z *= c;
  return *this;
}
Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
Field2D operator*(cplx c, Field2D a) { return a *= c; }

double norm_l2(const Field2D& f) {
  double s = 0.0;
  for (const auto& z : f.v) s += std::norm(z);
  return std::sqrt(s * f.grid.cell_area());
}

double norm_l1(const Field2D& f) {
  double s = 0.0;
  for (const auto& z : f.v) s += std::abs(z);
  return s * f.grid.cell_area();
}

double norm_sup(const Field2D& f) {
  double s = 0.0;
  for (const auto& z : f.v) s = std::max(s, std::abs(z));
  return s;
}

cplx inner(const Field2D& f, const Field2D& g) {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * std::conj(g.v[i]);
  return s * f.grid.cell_area();
}

Field2D sample(const TorusGrid& g, const std::function<cplx(ParaPoint)>& fn) {
  Field2D f(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) f.at(i, j) = fn(g.point(i, j));
  return f;
}

// ---- FFT backend ------------------------------------------------------------

namespace {

// Plans are cached per grid size; execution uses the new-array interface so
// any buffer can be transformed. Plan creation is not thread safe in FFTW.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n1, int n2) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n1, n2);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<cplx> buf(std::size_t(n1) * n2);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_2d(n1, n2, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_2d(n1, n2, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(key, pp).first;
  }
  return it->second;
}

// The grid starts at -L, not 0, so the plain-sum transform with continuum
// frequency labels differs from the index-space DFT by (-1)^(k1+k2).
inline void apply_parity(Field2D& f) {
  const int n2 = f.grid.N2;
  for (int i = 0; i < f.grid.N1; ++i)
    for (int j = 0; j < n2; ++j)
      if ((i + j) & 1) f.at(i, j) = -f.at(i, j);
}

}  // namespace

Field2D spectral_transform(const Field2D& f, Direction dir) {
  Field2D out = f;
  auto& pp = plans_for(f.grid.N1, f.grid.N2);
  auto* p = reinterpret_cast<fftw_complex*>(out.v.data());
  if (dir == Direction::forward) {
    fftw_execute_dft(pp.fwd, p, p);
    apply_parity(out);
  } else {
    apply_parity(out);
    fftw_execute_dft(pp.bwd, p, p);
    const double inv = 1.0 / double(f.grid.size());
    for (auto& z : out.v) z *= inv;
  }
  return out;
}

Field2D apply_multiplier(const Field2D& f, const MultiplierSpec& m) {
  Field2D hat = spectral_transform(f, Direction::forward);
  const TorusGrid& g = f.grid;
  for (int i = 0; i < g.N1; ++i) {
    for (int j = 0; j < g.N2; ++j) {
      cplx val;
      if (g.k1(i) == 0 && g.k2(j) == 0) {
        val = m.dc_value;
      } else {
        val = m.symbol(g.xi1(i), g.xi2(j));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
          throw std::runtime_error("apply_multiplier: symbol not finite at a lattice point");
      }
      hat.at(i, j) *= val;
    }
  }
  return spectral_transform(hat, Direction::inverse);
}

Field2D shift_field(const Field2D& f, const ParaPoint& shift) {
  Field2D hat = spectral_transform(f, Direction::forward);
  const TorusGrid& g = f.grid;
  // Separable phases e^{-i xi1 v1}, e^{-i xi2 v2}.
  std::vector<cplx> ph1(g.N1), ph2(g.N2);
  for (int i = 0; i < g.N1; ++i) ph1[i] = std::polar(1.0, -g.xi1(i) * shift.x1);
  for (int j = 0; j < g.N2; ++j) ph2[j] = std::polar(1.0, -g.xi2(j) * shift.x2);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) hat.at(i, j) *= ph1[i] * ph2[j];
  return spectral_transform(hat, Direction::inverse);
}

SpectralInterpolant::SpectralInterpolant(const Field2D& f)
    : hat_(spectral_transform(f, Direction::forward)) {}

cplx SpectralInterpolant::operator()(const ParaPoint& p) const {
  const TorusGrid& g = hat_.grid;
  std::vector<cplx> ph2(g.N2);
  for (int j = 0; j < g.N2; ++j) ph2[j] = std::polar(1.0, g.xi2(j) * p.x2);
  cplx total(0.0, 0.0);
  for (int i = 0; i < g.N1; ++i) {
    cplx row(0.0, 0.0);
    for (int j = 0; j < g.N2; ++j) row += hat_.at(i, j) * ph2[j];
    total += row * std::polar(1.0, g.xi1(i) * p.x1);
  }
  return total / double(g.size());
}

cplx trig_interpolate(const Field2D& f, const ParaPoint& p) {
  return SpectralInterpolant(f)(p);
}

Field2D upsample(const Field2D& f, int u1, int u2) {
  if (u1 < 1 || u2 < 1) throw std::invalid_argument("upsample: factors must be >= 1");
  const TorusGrid& g = f.grid;
  TorusGrid big(g.L1, g.L2, g.N1 * u1, g.N2 * u2);
  Field2D hat = spectral_transform(f, Direction::forward);
  Field2D bighat(big);
  const double scale = double(u1) * double(u2);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      const int bi = (g.k1(i) + big.N1) % big.N1;
      const int bj = (g.k2(j) + big.N2) % big.N2;
      bighat.at(bi, bj) = hat.at(i, j) * scale;
    }
  return spectral_transform(bighat, Direction::inverse);
}

// ---- smooth cutoffs ---------------------------------------------------------

namespace {
inline double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}

double smooth_cutoff(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = glue(2.0 - a);
  return up / (up + glue(a - 1.0));
}

double smooth_step(double x, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("smooth_step: need a < b");
  if (x <= a) return 1.0;
  if (x >= b) return 0.0;
  const double up = glue((b - x) / (b - a));
  return up / (up + glue((x - a) / (b - a)));
}

double annulus_cutoff(double t) { return smooth_cutoff(t) - smooth_cutoff(2.0 * t); }

double partial_partition(double t, int jmin, int jmax) {
  return smooth_cutoff(std::ldexp(t, -jmax)) - smooth_cutoff(std::ldexp(t, -(jmin - 1)));
}

// ---- mollifier ----------------------------------------------------------------

namespace {

inline double bump1d(double u) {
  const double q = 1.0 - u * u;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

// Averages of (1/w) * bump1d(2(x-c)/w) over each grid cell along one axis.
// Support is |x-c| < w/2; integration is restricted to it.
std::vector<double> cell_averages(double center, double w, double x0, double h, int n) {
  std::vector<double> out(n, 0.0);
  const double lo = center - 0.5 * w, hi = center + 0.5 * w;
  const auto& gl = gauss_legendre(12);
  for (int i = 0; i < n; ++i) {
    const double a = std::max(x0 + i * h - 0.5 * h, lo);
    const double b = std::min(x0 + i * h + 0.5 * h, hi);
    if (b <= a) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (const auto& q : gl) {
      const double x = mid + half * q.t;
      s += q.w * bump1d(2.0 * (x - center) / w);
    }
    out[i] = s * half / (w * h);  // cell average of the mass-w-normalized profile
  }
  return out;
}

// Sampled parabolic dilate with exact discrete mass one.
Field2D normalized_dilate(double u, const TorusGrid& g) {
  auto a1 = cell_averages(0.0, u, -g.L1, g.h1(), g.N1);
  auto a2 = cell_averages(0.0, u * u, -g.L2, g.h2(), g.N2);
  Field2D f(g);
  double mass = 0.0;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      const double val = a1[i] * a2[j];
      f.at(i, j) = val;
      mass += val;
    }
  mass *= g.cell_area();
  if (!(mass > 0.0)) throw std::runtime_error("build_mollifier: under-resolved support");
  const double inv = 1.0 / mass;
  for (auto& z : f.v) z *= inv;
  return f;
}

}  // namespace

Field2D build_mollifier(double s, const TorusGrid& g) {
  if (!(s > 0.0)) throw std::invalid_argument("build_mollifier: scale must be positive");
  if (0.5 * s > g.L1 || 0.5 * s * s > g.L2)
    throw std::invalid_argument("build_mollifier: support exceeds the torus");
  if (s < 2.0 * g.h1())
    throw std::invalid_argument("build_mollifier: under-resolved support");
  Field2D psi = normalized_dilate(s, g);
  psi -= normalized_dilate(0.5 * s, g);
  const double l1 = norm_l1(psi);
  if (!(l1 > 1e-300)) throw std::runtime_error("build_mollifier: degenerate at this resolution");
  psi *= cplx(1.0 / l1, 0.0);
  return psi;
}

// ---- test-function class -------------------------------------------------------

namespace {

struct ProfileBounds {
  double m0, m1, m2;  // sup |b|, |b'|, |b''| of the 1d profile
};

const ProfileBounds& profile_bounds() {
  static ProfileBounds pb = [] {
    ProfileBounds b{0.0, 0.0, 0.0};
    const int n = 40000;
    for (int i = 0; i <= n; ++i) {
      const double u = -1.0 + 2.0 * i / n;
      const double q = 1.0 - u * u;
      if (q <= 0.0) continue;
      const double f = std::exp(-1.0 / q);
      const double fp = f * (-2.0 * u / (q * q));
      const double fpp = f * ((4.0 * u * u / (q * q * q * q)) - (2.0 / (q * q)) - (8.0 * u * u / (q * q * q)));
      b.m0 = std::max(b.m0, std::abs(f));
      b.m1 = std::max(b.m1, std::abs(fp));
      b.m2 = std::max(b.m2, std::abs(fpp));
    }
    return b;
  }();
  return pb;
}

}  // namespace

double bump_class_scale(double r) {
  const auto& pb = profile_bounds();
  const double r2 = r * r;
  // Derivative magnitudes of b(2 y1/r) b(2 y2/r^2) scale as below; each class
  // condition gives an upper bound for the scalar factor.
  const double d10 = (2.0 / r) * pb.m1 * pb.m0;
  const double d01 = (2.0 / r2) * pb.m1 * pb.m0;
  const double d20 = (4.0 / (r * r)) * pb.m2 * pb.m0;
  const double d11 = (4.0 / (r * r2)) * pb.m1 * pb.m1;
  const double d02 = (4.0 / (r2 * r2)) * pb.m2 * pb.m0;
  double alpha = 1.0 / (pb.m0 * pb.m0);              // sup bound
  alpha = std::min(alpha, 0.5 / (pb.m0 * pb.m0));    // large-shift Lipschitz case
  alpha = std::min(alpha, 1.0 / (r * (d10 + r * d01)));  // parabolic Lipschitz
  for (double d : {d10, d01, d20, d11, d02}) alpha = std::min(alpha, 1.0 / d);
  return 0.9 * alpha;  // small margin so sampled checks pass strictly
}

double bump_class_scale(const std::vector<double>& r_list) {
  if (r_list.empty()) throw std::invalid_argument("bump_class_scale: empty scale list");
  double a = bump_class_scale(r_list.front());
  for (double r : r_list) a = std::min(a, bump_class_scale(r));
  return a;
}

double bump_value(const BumpSpec& b, double alpha, const ParaPoint& p) {
  return alpha * bump1d(2.0 * (p.x1 - b.center.x1) / b.r) *
         bump1d(2.0 * (p.x2 - b.center.x2) / (b.r * b.r));
}

Field2D build_bump_field(const BumpSpec& b, double alpha, const TorusGrid& g) {
  if (b.r < 4.0 * g.h1() || b.r * b.r < 4.0 * g.h2())
    throw std::invalid_argument("build_bump_field: scale under-resolved by the grid");
  return sample(g, [&](ParaPoint p) { return cplx(bump_value(b, alpha, p), 0.0); });
}

BumpClassReport bump_class_check(const Field2D& f, const ParaPoint& x0, double r,
                                 int n_samples, unsigned long long seed) {
  BumpClassReport rep;
  rep.max_abs = norm_sup(f);

  // Parabolic Lipschitz ratio by random pairs, field values by interpolation.
  SpectralInterpolant interp(f);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> urho(0.0, 1.0);
  for (int k = 0; k < n_samples; ++k) {
    const double rho = r * std::pow(2.0, -8.0 * urho(rng));  // scales down to r/256
    ParaPoint y{x0.x1 + 0.75 * r * unif(rng), x0.x2 + 0.75 * r * r * unif(rng)};
    ParaPoint h{rho * unif(rng), rho * rho * unif(rng)};
    const double diff = std::abs(interp(y + h) - interp(y));
    rep.lip_ratio = std::max(rep.lip_ratio, diff * r / rho);
  }

  // Mixed derivatives up to total order 2 by spectral differentiation.
  const std::pair<int, int> orders[] = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (auto [k, m] : orders) {
    MultiplierSpec d{[k = k, m = m](double xi1, double xi2) {
                       cplx v(1.0, 0.0);
                       for (int a = 0; a < k; ++a) v *= cplx(0.0, xi1);
                       for (int a = 0; a < m; ++a) v *= cplx(0.0, xi2);
                       return v;
                     },
                     cplx(0.0, 0.0)};
    rep.max_deriv = std::max(rep.max_deriv, norm_sup(apply_multiplier(f, d)));
  }

  rep.pass = rep.max_abs <= 1.0 + 1e-9 && rep.lip_ratio <= 1.0 + 1e-6 && rep.max_deriv <= 1.0 + 1e-6;
  return rep;
}

}  // namespace paracomm
