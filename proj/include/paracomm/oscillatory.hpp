#pragma once

// The oscillatory integral m(xi) = int exp(i(xi1 t + xi2 t^2)) eta(t) dt and
// dyadic sweeps of its parabolic-order-1 decay product |m(xi)| (|xi1| + |xi2|^{1/2}).

#include <complex>
#include <vector>

namespace paracomm {

struct OscResult {
  double xi1 = 0.0, xi2 = 0.0;
  std::complex<double> value;
  double decay_product = 0.0;
};

/// Adaptive panel quadrature; node density at least 10 points per oscillation
/// of the phase on the support of eta, absolute error target ~1e-9.
std::complex<double> curve_multiplier(double xi1, double xi2);

/// m(0) = integral of eta.
double eta_mass();
/// int |t| eta(t) dt and int t^2 eta(t) dt (Lipschitz constants of m).
double eta_moment_abs1();
double eta_moment_2();

struct DecaySweep {
  std::vector<OscResult> rows;
  double max_product = 0.0;
  double max_over_min = 0.0;  // over nonzero products
  double log_slope = 0.0;     // least-squares slope of log(product) vs k*log 2
};

/// Evaluates m at xi = 2^k * ray for k = 0..k_max.
DecaySweep decay_sweep(double ray1, double ray2, int k_max);

}  // namespace paracomm
