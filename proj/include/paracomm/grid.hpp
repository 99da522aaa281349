#pragma once

// Periodic grids and sampled fields. The torus is [-L1,L1) x [-L2,L2),
// frequencies xi_k = pi*k/L with k in [-N/2, N/2). The forward transform is
// the plain sum  fhat(xi) = sum_n f(x_n) exp(-i xi.x_n),  the inverse divides
// by N1*N2, so multiplier symbols read exactly as their continuum formulas.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "paracomm/geometry.hpp"

namespace paracomm {

using cplx = std::complex<double>;

struct TorusGrid {
  double L1 = 1.0, L2 = 1.0;  // half-periods
  int N1 = 0, N2 = 0;         // samples per axis, even

  TorusGrid() = default;
  TorusGrid(double l1, double l2, int n1, int n2) : L1(l1), L2(l2), N1(n1), N2(n2) {
    if (!(L1 > 0.0 && L2 > 0.0)) throw std::invalid_argument("TorusGrid: half-periods must be positive");
    if (N1 <= 0 || N2 <= 0 || N1 % 2 != 0 || N2 % 2 != 0)
      throw std::invalid_argument("TorusGrid: sample counts must be positive and even");
  }

  double h1() const { return 2.0 * L1 / N1; }
  double h2() const { return 2.0 * L2 / N2; }
  double cell_area() const { return h1() * h2(); }
  std::size_t size() const { return std::size_t(N1) * std::size_t(N2); }

  double x1(int i) const { return -L1 + i * h1(); }
  double x2(int j) const { return -L2 + j * h2(); }
  ParaPoint point(int i, int j) const { return {x1(i), x2(j)}; }

  // Signed frequency index for array slot m (FFT natural order).
  int k1(int m) const { return m < N1 / 2 ? m : m - N1; }
  int k2(int m) const { return m < N2 / 2 ? m : m - N2; }
  double xi1(int m) const { return M_PI * k1(m) / L1; }
  double xi2(int m) const { return M_PI * k2(m) / L2; }

  bool operator==(const TorusGrid& o) const = default;
};

struct Field2D {
  TorusGrid grid;
  std::vector<cplx> v;  // row-major, index i*N2+j

  Field2D() = default;
  explicit Field2D(const TorusGrid& g) : grid(g), v(g.size(), cplx(0.0, 0.0)) {}

  cplx& at(int i, int j) { return v[std::size_t(i) * grid.N2 + j]; }
  const cplx& at(int i, int j) const { return v[std::size_t(i) * grid.N2 + j]; }

  Field2D& operator+=(const Field2D& o);
  Field2D& operator-=(const Field2D& o);
  Field2D& operator*=(cplx c);
};

Field2D operator+(Field2D a, const Field2D& b);
Field2D operator-(Field2D a, const Field2D& b);
Field2D operator*(cplx c, Field2D a);

/// sqrt( sum |f|^2 * cell_area )
double norm_l2(const Field2D& f);
/// sum |f| * cell_area
double norm_l1(const Field2D& f);
double norm_sup(const Field2D& f);
/// sum f * conj(g) * cell_area
cplx inner(const Field2D& f, const Field2D& g);

Field2D sample(const TorusGrid& g, const std::function<cplx(ParaPoint)>& fn);

enum class Direction { forward, inverse };

// Plain-sum DFT with continuum frequency labels (see file header).
// Spectral fields use the same Field2D container; slot (m1,m2) holds the
// coefficient of exp(i xi.x) with xi = (xi1(m1), xi2(m2)).
Field2D spectral_transform(const Field2D& f, Direction dir);

struct MultiplierSpec {
  std::function<cplx(double, double)> symbol;  // (xi1, xi2) -> value
  cplx dc_value = cplx(0.0, 0.0);
};

/// forward transform, multiply pointwise by the symbol (dc_value at xi = 0),
/// inverse transform. Throws if the symbol is non-finite at a lattice point.
Field2D apply_multiplier(const Field2D& f, const MultiplierSpec& m);

/// g(x) = f(x - shift), evaluated in the trigonometric interpolation sense.
Field2D shift_field(const Field2D& f, const ParaPoint& shift);

// Cached spectrum for repeated off-grid evaluation of one field.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const Field2D& f);
  cplx operator()(const ParaPoint& p) const;
  const Field2D& spectrum() const { return hat_; }

 private:
  Field2D hat_;
};

/// One-shot trigonometric interpolation; exact on any pure lattice mode.
cplx trig_interpolate(const Field2D& f, const ParaPoint& p);

/// Zero-padded spectral refinement onto the (u1*N1, u2*N2) lattice.
Field2D upsample(const Field2D& f, int u1, int u2);

// ---- smooth cutoffs -------------------------------------------------------

/// Smooth even cutoff: 1 on [-1,1], 0 off [-2,2], glued with exp(-1/x).
double smooth_cutoff(double t);
/// Smooth transition: 1 for x <= a, 0 for x >= b.
double smooth_step(double x, double a, double b);
/// Annulus bump eta(t) = chi(t) - chi(2t), supported in 1/2 <= |t| <= 2;
/// the dilates eta(t/2^j) telescope to a partition of unity away from 0.
double annulus_cutoff(double t);
inline double scale_cutoff(double t, int j) { return annulus_cutoff(std::ldexp(t, -j)); }
/// sum_{|j| <= J} eta(t/2^j) = chi(t/2^J) - chi(t*2^{J+1})
double partial_partition(double t, int jmin, int jmax);

// ---- mollifier ------------------------------------------------------------

// Mean-zero mollifier supported in the cube I_s(0): a difference of two
// parabolic dilates of a smooth product bump, sampled by cell averages so the
// construction stays non-degenerate on coarse grids. Each dilate is
// normalized to discrete mass one before differencing (discrete mean is then
// exactly zero) and the result is scaled to discrete L1 norm one.
Field2D build_mollifier(double s, const TorusGrid& g);

// ---- test-function class --------------------------------------------------

struct BumpSpec {
  ParaPoint center;
  double r = 1.0;
};

// Scalar normalization making the closed-form product bump at scale r satisfy
// the class conditions: sup bound 1, parabolic Lipschitz ratio 1/r, mixed
// derivatives up to total order 2 bounded by 1.
double bump_class_scale(double r);
/// min of bump_class_scale over a family of scales (keeps the family an exact
/// dilation orbit when several scales are compared against each other).
double bump_class_scale(const std::vector<double>& r_list);

double bump_value(const BumpSpec& b, double alpha, const ParaPoint& p);
Field2D build_bump_field(const BumpSpec& b, double alpha, const TorusGrid& g);

struct BumpClassReport {
  double max_abs = 0.0;       // condition (sup bound)
  double lip_ratio = 0.0;     // max |f(y+h)-f(y)| * r / rho over sampled h
  double max_deriv = 0.0;     // max mixed derivative, total order <= 2
  bool pass = false;
};

BumpClassReport bump_class_check(const Field2D& f, const ParaPoint& x0, double r,
                                 int n_samples = 2000, unsigned long long seed = 1);

}  // namespace paracomm
