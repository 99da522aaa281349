#include "paracomm/oscillatory.hpp"

#include <algorithm>
#include <cmath>

#include "paracomm/grid.hpp"
#include "paracomm/quadrature.hpp"

namespace paracomm {

namespace {

// Number of Gauss-16 panels per unit length so that the phase advances by at
// most ~ 2*pi/10 per node.
int panels_for(double xi1, double xi2, double len) {
  const double dphase = std::abs(xi1) + 4.0 * std::abs(xi2);  // max |phase'| on |t| <= 2
  const double nodes_needed = 10.0 * dphase * len / (2.0 * M_PI);
  return std::max(12, int(std::ceil(nodes_needed / 16.0)));
}

std::complex<double> integrate_half(double xi1, double xi2, double a, double b) {
  const int np = panels_for(xi1, xi2, b - a);
  std::vector<double> edges(np + 1);
  for (int i = 0; i <= np; ++i) edges[i] = a + (b - a) * i / np;
  auto nodes = gauss_panels(edges, 16);
  std::complex<double> acc(0.0, 0.0);
  for (const auto& q : nodes) {
    const double w = annulus_cutoff(q.t);
    if (w == 0.0) continue;
    acc += q.w * w * std::polar(1.0, xi1 * q.t + xi2 * q.t * q.t);
  }
  return acc;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

std::complex<double> curve_multiplier(double xi1, double xi2) {
  return integrate_half(xi1, xi2, 0.5, 2.0) + integrate_half(xi1, xi2, -2.0, -0.5);
}

namespace {
double eta_integral(const std::function<double(double)>& w) {
  // eta is even; integrate the positive half with fine panels and double.
  std::vector<double> edges;
  for (int i = 0; i <= 600; ++i) edges.push_back(0.5 + 1.5 * i / 600.0);
  auto nodes = gauss_panels(edges, 8);
  double s = 0.0;
  for (const auto& q : nodes) s += q.w * annulus_cutoff(q.t) * w(q.t);
  return 2.0 * s;
}
}  // namespace

double eta_mass() { return eta_integral([](double) { return 1.0; }); }
double eta_moment_abs1() { return eta_integral([](double t) { return std::abs(t); }); }
double eta_moment_2() { return eta_integral([](double t) { return t * t; }); }

DecaySweep decay_sweep(double ray1, double ray2, int k_max) {
  if (k_max < 4) throw std::invalid_argument("decay_sweep: need k_max >= 4");
  DecaySweep sweep;
  sweep.rows.resize(k_max + 1);
#pragma omp parallel for schedule(static)
  for (int k = 0; k <= k_max; ++k) {
    const double scale = std::ldexp(1.0, k);
    OscResult r;
    r.xi1 = scale * ray1;
    r.xi2 = scale * ray2;
    r.value = curve_multiplier(r.xi1, r.xi2);
    r.decay_product = std::abs(r.value) * (std::abs(r.xi1) + std::sqrt(std::abs(r.xi2)));
    sweep.rows[k] = r;
  }
  double lo = 1e300;
  std::vector<double> xs, ys;
  for (int k = 0; k <= k_max; ++k) {
    const double p = sweep.rows[k].decay_product;
    sweep.max_product = std::max(sweep.max_product, p);
    if (p > 0.0) {
      lo = std::min(lo, p);
      xs.push_back(k * std::log(2.0));
      ys.push_back(std::log(p));
    }
  }
  sweep.max_over_min = lo < 1e300 && lo > 0.0 ? sweep.max_product / lo : 0.0;
  sweep.log_slope = fit_slope(xs, ys);
  return sweep;
}

}  // namespace paracomm
