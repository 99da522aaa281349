#pragma once

// Quantitative experiments: matrix-free operator norms by power iteration on
// T*T, the mollified single-scale decay fit, the weak-boundedness pairing
// sweep, the oscillation of T applied to the constant, direction uniformity,
// and the cross-check between the two routes to the full kernel operator.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "paracomm/operators.hpp"

namespace paracomm {

using FieldOp = std::function<Field2D(const Field2D&)>;

struct OpNormResult {
  double norm_estimate = 0.0;
  int iterations = 0;
  double rel_change_at_stop = 0.0;
  unsigned long long seed = 0;
};

/// Largest singular value of the map by power iteration on T*T, started from
/// a seeded random field. Validates linearity on a random triple first.
OpNormResult opnorm_power(const FieldOp& apply, const FieldOp& adjoint, const TorusGrid& g,
                          double tol = 1e-6, int max_iter = 500,
                          unsigned long long seed = 1, bool validate_linearity = true);

/// Dense matrix of the map in the lattice-mode-free (grid point) basis;
/// used to cross-validate opnorm_power at small sizes.
std::vector<std::vector<cplx>> matrixize(const FieldOp& apply, const TorusGrid& g);
double matrix_opnorm(const std::vector<std::vector<cplx>>& m, int iters = 200,
                     unsigned long long seed = 1);

struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;
  std::vector<std::pair<double, double>> points;  // (log scale, log value)
};

/// Ordinary least squares of log(value) against log(scale).
DecayFit fit_loglog(const std::vector<std::pair<double, double>>& scale_value);

// ---- mollified decay of the dyadic piece -----------------------------------

struct QsDecayRow {
  double s = 0.0;
  double norm = 0.0;
  int iterations = 0;
};

struct QsDecayResult {
  std::vector<QsDecayRow> rows;
  DecayFit fit;
};

struct QsDecaySpec {
  int j = 0;
  int n_quad = 24;
  double tol = 1e-4;
  int max_iter = 300;
  unsigned long long seed = 11;
};

/// Norm of f -> Q_s(T_j f) per scale s (s <= 2^j), with the fitted decay
/// exponent of norm against s.
QsDecayResult qs_decay(const SymbolA& A, const std::vector<double>& s_list, const TorusGrid& g,
                       const QsDecaySpec& spec = {});

// ---- weak boundedness --------------------------------------------------------

struct WbpRow {
  double r = 0.0;
  double pairing_abs = 0.0;
  double normalized = 0.0;  // |<psi, T phi>| / r^3
};

struct WbpSpec {
  // Per-scale grid: half-periods (base1*r, base2*r^2) so every scale is
  // resolved identically and the family is an exact dilation orbit.
  double base1 = 4.0, base2 = 4.0;
  int n1 = 64, n2 = 64;
  double eps0 = 1e-3;  // t-window r*[eps0, R0]
  double R0 = 2.0;
  int n_quad = 24;
};

/// make_symbol generators are grid-independent closed forms, so the same A is
/// sampled onto each per-scale grid.
std::vector<WbpRow> wbp_sweep(const SymbolA& A, const std::vector<double>& r_list,
                              const WbpSpec& spec = {});

// ---- oscillation of T 1 ------------------------------------------------------

struct T1Spec {
  double eps = 1e-3;
  double t_max = 64.0;
  int n_quad = 24;
  int n_cube_grid = 8;  // sample points per axis inside the cube
};

/// Mean oscillation over the cube of the truncated operator applied to the
/// constant, centered with the far-field value at the cube center.
double t1_oscillation(const SymbolA& A, const ParaCube& cube, const T1Spec& spec = {});

// ---- direction uniformity ----------------------------------------------------

struct SigmaRow {
  double theta = 0.0;
  double norm = 0.0;
  int iterations = 0;
};

struct SigmaSweepResult {
  std::vector<SigmaRow> rows;
  double max_norm = 0.0;
  double median_norm = 0.0;
};

struct SigmaSweepSpec {
  int n_sigma = 32;
  CurveWindow window{0.05, 4.0};
  int n_quad = 16;
  double tol = 1e-3;
  int max_iter = 200;
  unsigned long long seed = 5;
};

SigmaSweepResult sigma_uniformity(const SymbolA& A, const TorusGrid& g,
                                  const SigmaSweepSpec& spec = {});

// ---- rotations vs direct -----------------------------------------------------

struct RotDirectResult {
  double rel_l2_error = 0.0;
  double direct_norm = 0.0;
};

RotDirectResult rotations_vs_direct(const SymbolA& A, const Field2D& f,
                                    const HomKernelProfile& K, const DirectSpec& dspec,
                                    const RotationsSpec& rspec);

}  // namespace paracomm
