#pragma once

// Curve operators on periodic fields: the Hilbert transform along the
// parabola, the commutator with symbol A, its dyadic pieces, the single-scale
// piece with its adjoint, mollification, and the two routes to the full
// kernel operator (direct plane quadrature vs. average over directions).
//
// All evaluations of f(x - gamma(t)) use the trigonometric interpolant of f;
// on the full grid this is a spectral shift, one FFT per quadrature node.

#include <functional>
#include <vector>

#include "paracomm/grid.hpp"
#include "paracomm/quadrature.hpp"
#include "paracomm/symbols.hpp"

namespace paracomm {

struct CurveWindow {
  double eps = 1e-3;  // inner truncation of the principal value
  double R = 4.0;     // outer truncation
};

struct CurveOpSpec {
  Sigma sigma{1.0, 1.0};  // the default direction used throughout
  CurveWindow window;
  int n_quad = 24;  // Gauss nodes per dyadic t-shell
};

/// Symmetric principal-value nodes: Gauss panels on dyadic shells
/// [2^k eps, 2^{k+1} eps] up to R, mirrored under t -> -t with positive
/// weights. Mirror pairs are adjacent, so odd integrands cancel exactly.
std::vector<QuadNode> pv_nodes(const CurveWindow& w, int n_quad);

/// Gauss panels on +/-[edges], mirror pairs adjacent.
std::vector<QuadNode> symmetric_panels(const std::vector<double>& edges, int n_quad);

class CurveOperator {
 public:
  enum class Form { plain, bracket };

  /// integral of f(x - gamma_sigma(t)) dt/t over the truncated window
  static CurveOperator hilbert(const TorusGrid& g, const CurveOpSpec& spec);
  /// integral of [A(x)-A(x-gamma_sigma(t))] f(x-gamma_sigma(t)) dt/t^2
  static CurveOperator commutator(const TorusGrid& g, const SymbolA& A, const CurveOpSpec& spec);
  /// commutator piece with the weight eta(t/2^j)/t^2 on +/-[2^{j-1}, 2^{j+1}]
  static CurveOperator dyadic_piece(const TorusGrid& g, const SymbolA& A, int j,
                                    const Sigma& sigma = {1.0, 1.0}, int n_quad = 24);
  /// single-scale piece: eta(t)/t^2 over the positive half annulus (1/2, 2)
  static CurveOperator single_scale(const TorusGrid& g, const SymbolA& A, int n_quad = 24);
  /// commutator with an arbitrary scalar weight g(t) on given panel edges
  /// (positive edges; mirrored when symmetric = true)
  static CurveOperator weighted(const TorusGrid& g, const SymbolA& A, const Sigma& sigma,
                                const std::vector<double>& edges, int n_quad,
                                const std::function<double(double)>& weight,
                                bool symmetric = true);

  Field2D apply(const Field2D& f) const;
  /// Exact discrete adjoint: pairs with apply under the grid inner product.
  Field2D apply_adjoint(const Field2D& f) const;

  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const TorusGrid& grid() const { return grid_; }

 private:
  CurveOperator(const TorusGrid& g, Sigma sigma, Form form) : grid_(g), sigma_(sigma), form_(form) {}
  void set_nodes(const SymbolA* A, std::vector<QuadNode> nodes);

  TorusGrid grid_;
  Sigma sigma_;
  Form form_;
  std::vector<QuadNode> nodes_;                 // weight includes the scalar factor g(t)
  std::vector<std::vector<double>> brackets_;   // per node, A(x) - A(x - gamma(t)) on the grid
};

// ---- mollification ----------------------------------------------------------

/// Circular convolution with a (mean-zero, unit L1) kernel, f * psi.
class Convolver {
 public:
  Convolver(const TorusGrid& g, const Field2D& kernel);
  Field2D apply(const Field2D& f) const;
  Field2D apply_adjoint(const Field2D& f) const;
  /// max over the lattice of |kernel symbol| = operator norm of the convolution
  double max_symbol() const;
  cplx symbol_at(int m1, int m2) const;

 private:
  TorusGrid grid_;
  Field2D kernel_hat_;
  double area_;
};

/// Convolution with the mean-zero mollifier at scale s.
Field2D q_smooth(const Field2D& f, double s);

// ---- homogeneous kernels -----------------------------------------------------

/// x2^{-2} exp(-x1^2 / (4 x2)) for x2 > 0, zero for x2 <= 0. Origin throws.
double heat_kernel(const ParaPoint& x);

struct HomKernelProfile {
  std::function<double(double s1, double s2)> value;  // restriction to the circle
};

HomKernelProfile heat_profile();

/// Degree -4 homogeneous extension: rho^{-4} K(sigma) in parabolic polar coordinates.
double hom_extend(const HomKernelProfile& profile, const ParaPoint& x);

bool profile_even_x1(const HomKernelProfile& profile, int n_check = 128, double tol = 1e-10);
/// circle integral of |K(sigma)| (1 + sigma2^2), by trapezoid quadrature
double profile_l1(const HomKernelProfile& profile, int n = 4096);

// ---- full kernel operator: two routes ---------------------------------------

struct DirectSpec {
  double inner_cut = 0.5;
  double outer_cut = 1.5;
  int subdivide = 8;  // subcell refinement at the two excision boundaries
};

/// Plane quadrature of  int [A(x)-A(y)] K(x-y) f(y) dy  over the annulus
/// inner_cut <= ||x-y|| <= outer_cut (parabolic norm), kernel given by the
/// homogeneous extension of the profile. Boundary-straddling cells are
/// refined on a 2*subdivide upsampled lattice.
Field2D direct_commutator(const SymbolA& A, const Field2D& f, const HomKernelProfile& K,
                          const DirectSpec& spec);

struct RotationsSpec {
  int n_sigma = 64;
  double inner_cut = 0.5;
  double outer_cut = 1.5;
  int n_quad = 24;
};

/// Average over unit directions: (1/2) int K(sigma) T_A^{gamma_sigma} f (1+sigma2^2) dsigma
/// with the t-window matched per direction so the excised set equals the
/// direct route's annulus exactly. The 1/2 accounts for the t-integral
/// covering each plane direction twice (t and -t).
Field2D rotations_commutator(const SymbolA& A, const Field2D& f, const HomKernelProfile& K,
                             const RotationsSpec& spec);

}  // namespace paracomm
