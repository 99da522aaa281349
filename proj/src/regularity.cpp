#include "paracomm/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "paracomm/grid.hpp"
#include "paracomm/quadrature.hpp"

namespace paracomm {

ParaPoint shell_map(const ParaPoint& omega, double s, double t) {
  return {omega.x1 + s - t, omega.x2 + s * s - t * t};
}

std::optional<ShellPair> shell_map_inverse(const ParaPoint& omega, const ParaPoint& y) {
  const double u = y.x1 - omega.x1;
  if (u == 0.0) return std::nullopt;
  const double v = y.x2 - omega.x2;
  const double sum = v / u;  // s + t
  const ShellPair p{0.5 * (u + sum), 0.5 * (sum - u)};
  if (p.s < 0.25 || p.s > 4.0 || p.t < 0.25 || p.t > 4.0) return std::nullopt;
  return p;
}

ShellPair shifted_pair(double s, double t, const ParaPoint& h) {
  const double u = h.x1 + s - t;
  if (u == 0.0) throw std::invalid_argument("shifted_pair: vanishing denominator h1 + s - t");
  const double sum = (h.x2 + s * s - t * t) / u;
  return {0.5 * (u + sum), 0.5 * (sum - u)};
}

bool in_shell_domain(double s, double t, double lambda) {
  return t >= 0.5 && s <= 2.0 && t < s && s - t >= 15.0 * std::cbrt(lambda);
}

ShiftBoundReport shift_bound_check(double lambda, long n_samples, unsigned long long seed) {
  if (!(lambda > 0.0 && lambda <= kMaxLambda))
    throw std::invalid_argument("shift_bound_check: lambda outside (0, 1e-3]");
  const double u_min = 15.0 * std::cbrt(lambda);
  const double bound = std::pow(lambda, 2.0 / 3.0);
  ShiftBoundReport rep;
  rep.lambda = lambda;
  rep.n_samples = n_samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long k = 0; k < n_samples; ++k) {
    const double u = u_min + (1.5 - u_min) * unif(rng);
    const double t = 0.5 + (2.0 - u - 0.5) * unif(rng);
    const double s = t + u;
    const ParaPoint h{lambda * (2.0 * unif(rng) - 1.0),
                      lambda * lambda * (2.0 * unif(rng) - 1.0)};
    const ShellPair sp = shifted_pair(s, t, h);
    const double ratio = std::max(std::abs(t - sp.t), std::abs(s - sp.s)) / bound;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
  }
  return rep;
}

double double_bracket(const SymbolA& A, const ParaPoint& x, double s, double t) {
  const ParaPoint xt = x - curve_point(t);
  const ParaPoint xst = xt + curve_point(s);
  return (A(x) - A(xt)) * (A(xt) - A(xst));
}

namespace {
inline double phi_weight(double t) { return annulus_cutoff(t) / (t * t); }
}

double k0_eval(const SymbolA& A, const ParaPoint& w, const ParaPoint& y, double lambda) {
  const auto pair = shell_map_inverse(w, y);
  if (!pair || !in_shell_domain(pair->s, pair->t, lambda)) return 0.0;
  return -double_bracket(A, w, pair->s, pair->t) * phi_weight(pair->s) * phi_weight(pair->t) /
         (2.0 * (pair->s - pair->t));
}

// ---- L1 modulus of continuity of the kernel ---------------------------------

namespace {

// Kernel difference at shell coordinates (u, v) of the base chart. The
// shifted chart's pair solves u' = u - h1, v' = (u v - h2) / u'.
struct DiffIntegrand {
  const SymbolA& A;
  ParaPoint x, h;
  double lambda;

  double operator()(double u, double v) const {
    const double s = 0.5 * (v + u), t = 0.5 * (v - u);
    double term_x = 0.0;
    if (in_shell_domain(s, t, lambda))
      term_x = -double_bracket(A, x, s, t) * phi_weight(s) * phi_weight(t) / (2.0 * u);
    double term_xh = 0.0;
    const double up = u - h.x1;
    if (up > 0.0) {
      const double vp = (u * v - h.x2) / up;
      const double sp = 0.5 * (vp + up), tp = 0.5 * (vp - up);
      if (in_shell_domain(sp, tp, lambda))
        term_xh = -double_bracket(A, x + h, sp, tp) * phi_weight(sp) * phi_weight(tp) / (2.0 * up);
    }
    return std::abs(term_xh - term_x) * u;  // area element dy = u du dv
  }
};

// v-interval where the base chart pair lies in the admissible region.
inline void base_interval(double u, double& lo, double& hi) {
  lo = 1.0 + u;
  hi = 4.0 - u;
}

// v-interval where the shifted chart pair is admissible (empty if u' too small).
inline bool shift_interval(double u, const ParaPoint& h, double lambda, double& lo, double& hi) {
  const double up = u - h.x1;
  if (!(up >= 15.0 * std::cbrt(lambda))) return false;
  lo = ((1.0 + up) * up + h.x2) / u;
  hi = ((4.0 - up) * up + h.x2) / u;
  return lo < hi;
}

}  // namespace

double reg_integral(const SymbolA& A, const ParaPoint& x, const ParaPoint& h, double lambda,
                    int level) {
  if (!(lambda > 0.0 && lambda <= kMaxLambda))
    throw std::invalid_argument("reg_integral: lambda outside (0, 1e-3]");
  if (level < 1) throw std::invalid_argument("reg_integral: level must be >= 1");
  const double u_min = 15.0 * std::cbrt(lambda);
  const double u_max = 1.5 + std::max(0.0, h.x1);
  if (u_min >= u_max) return 0.0;

  const DiffIntegrand F{A, x, h, lambda};
  const int gl = 8 * level;

  // u panels: fine geometric panels near the inner edge (where the indicator
  // mismatch lives), plus explicit breakpoints at the mismatch offsets.
  std::vector<double> uedges{u_min};
  const double hshift = std::abs(h.x1);
  if (hshift > 0.0 && u_min + hshift < u_max) uedges.push_back(u_min + hshift);
  double w = std::max(hshift, std::pow(lambda, 2.0 / 3.0));
  double ucur = uedges.back();
  while (ucur + w < u_max * 0.999) {
    ucur += w;
    uedges.push_back(ucur);
    w *= 1.5;
  }
  for (double e : {1.5 - hshift, 1.5}) {
    if (e > uedges.front() && e < u_max) uedges.push_back(e);
  }
  uedges.push_back(u_max);
  std::sort(uedges.begin(), uedges.end());
  uedges.erase(std::unique(uedges.begin(), uedges.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               uedges.end());
  // `level` also doubles the panel count by bisecting each panel.
  for (int r = 1; r < level; ++r) {
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < uedges.size(); ++i) {
      refined.push_back(uedges[i]);
      refined.push_back(0.5 * (uedges[i] + uedges[i + 1]));
    }
    refined.push_back(uedges.back());
    uedges = std::move(refined);
  }

  const auto unodes = gauss_panels(uedges, gl);
  double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (long k = 0; k < long(unodes.size()); ++k) {
    const double u = unodes[k].t;
    double blo, bhi, slo = 0.0, shi = 0.0;
    base_interval(u, blo, bhi);
    const bool has_shift = shift_interval(u, h, lambda, slo, shi);
    std::vector<double> vedges;
    if (blo < bhi) {
      vedges.push_back(blo);
      vedges.push_back(bhi);
    }
    if (has_shift) {
      vedges.push_back(slo);
      vedges.push_back(shi);
    }
    if (vedges.empty()) continue;
    std::sort(vedges.begin(), vedges.end());
    vedges.erase(std::unique(vedges.begin(), vedges.end()), vedges.end());
    double inner = 0.0;
    for (const auto& q : gauss_panels(vedges, gl)) inner += q.w * F(u, q.t);
    total += unodes[k].w * inner;
  }
  // ds dt = du dv / 2
  return 0.5 * total;
}

std::vector<RegSweepRow> reg_integral_sweep(const SymbolA& A, const ParaPoint& x,
                                            const std::vector<double>& lambda_list, int level,
                                            bool randomize, unsigned long long seed) {
  std::vector<RegSweepRow> rows;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double lam : lambda_list) {
    RegSweepRow row;
    row.lambda = lam;
    row.h = randomize ? ParaPoint{lam * unif(rng), lam * lam * unif(rng)}
                      : ParaPoint{lam, lam * lam};
    row.integral = reg_integral(A, x, row.h, lam, level);
    row.ratio = row.integral / std::cbrt(lam);
    rows.push_back(row);
  }
  return rows;
}

MeasureEstimate boundary_mismatch_measure(const ParaPoint& h, double lambda, long n_mc,
                                          unsigned long long seed) {
  if (!(lambda > 0.0 && lambda <= kMaxLambda))
    throw std::invalid_argument("boundary_mismatch_measure: lambda outside (0, 1e-3]");
  if (std::abs(h.x1) > lambda || std::abs(h.x2) > lambda * lambda)
    throw std::invalid_argument("boundary_mismatch_measure: shift outside the admissible box");

  constexpr long kBlock = 1 << 14;
  const long nblocks = (n_mc + kBlock - 1) / kBlock;
  std::vector<long> block_hits(nblocks, 0);

#pragma omp parallel for schedule(static)
  for (long b = 0; b < nblocks; ++b) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (b + 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long lo = b * kBlock, hi = std::min(n_mc, lo + kBlock);
    long hits = 0;
    for (long k = lo; k < hi; ++k) {
      const double s = 0.5 + 1.5 * unif(rng);
      const double t = 0.5 + 1.5 * unif(rng);
      if (!in_shell_domain(s, t, lambda)) continue;
      const ShellPair sp = shifted_pair(s, t, h);
      if (!in_shell_domain(sp.s, sp.t, lambda)) ++hits;
    }
    block_hits[b] = hits;
  }

  MeasureEstimate est;
  est.n_samples = n_mc;
  for (long b = 0; b < nblocks; ++b) est.hits += block_hits[b];
  const double area = 1.5 * 1.5;
  const double p = double(est.hits) / double(n_mc);
  est.estimate = area * p;
  est.std_error = area * std::sqrt(std::max(0.0, p * (1.0 - p) / double(n_mc)));
  return est;
}

}  // namespace paracomm
