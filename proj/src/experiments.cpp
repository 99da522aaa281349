#include "paracomm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace paracomm {

namespace {

Field2D random_field(const TorusGrid& g, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Field2D f(g);
  for (auto& z : f.v) z = cplx(unif(rng), unif(rng));
  return f;
}

}  // namespace

OpNormResult opnorm_power(const FieldOp& apply, const FieldOp& adjoint, const TorusGrid& g,
                          double tol, int max_iter, unsigned long long seed,
                          bool validate_linearity) {
  if (validate_linearity) {
    const Field2D u = random_field(g, seed ^ 0xa5a5a5a5ull);
    const Field2D w = random_field(g, seed ^ 0x5a5a5a5aull);
    const cplx alpha(0.7, -0.3), beta(-0.2, 1.1);
    Field2D lhs = apply(alpha * Field2D(u) + beta * Field2D(w));
    Field2D rhs = alpha * apply(u) + beta * apply(w);
    const double scale = norm_l2(lhs) + norm_l2(rhs);
    if (scale > 0.0 && norm_l2(lhs - rhs) > 1e-8 * scale)
      throw std::invalid_argument("opnorm_power: map failed the linearity check");
  }

  OpNormResult res;
  res.seed = seed;
  Field2D v = random_field(g, seed);
  double nv = norm_l2(v);
  if (nv == 0.0) throw std::runtime_error("opnorm_power: zero start vector");
  v *= cplx(1.0 / nv, 0.0);

  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Field2D tv = apply(v);
    const double est = norm_l2(tv);  // ||T v|| with ||v|| = 1
    res.iterations = it;
    if (est == 0.0) {
      res.norm_estimate = 0.0;
      res.rel_change_at_stop = 0.0;
      return res;
    }
    Field2D w = adjoint(tv);
    const double nw = norm_l2(w);
    if (nw == 0.0) {
      res.norm_estimate = est;
      res.rel_change_at_stop = 0.0;
      return res;
    }
    v = (cplx(1.0 / nw, 0.0)) * w;
    res.norm_estimate = est;
    res.rel_change_at_stop = std::abs(est - prev) / est;
    if (it > 1 && res.rel_change_at_stop <= tol) return res;
    prev = est;
  }
  return res;
}

std::vector<std::vector<cplx>> matrixize(const FieldOp& apply, const TorusGrid& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
  for (std::size_t col = 0; col < n; ++col) {
    Field2D e(g);
    e.v[col] = cplx(1.0, 0.0);
    Field2D out = apply(e);
    for (std::size_t row = 0; row < n; ++row) m[row][col] = out.v[row];
  }
  return m;
}

double matrix_opnorm(const std::vector<std::vector<cplx>>& m, int iters,
                     unsigned long long seed) {
  const std::size_t n = m.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> v(n), tv(n), w(n);
  for (auto& z : v) z = cplx(unif(rng), unif(rng));
  double est = 0.0;
  for (int it = 0; it < iters; ++it) {
    double nv = 0.0;
    for (const auto& z : v) nv += std::norm(z);
    nv = std::sqrt(nv);
    for (auto& z : v) z /= nv;
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc(0.0, 0.0);
      for (std::size_t c = 0; c < n; ++c) acc += m[r][c] * v[c];
      tv[r] = acc;
    }
    double nt = 0.0;
    for (const auto& z : tv) nt += std::norm(z);
    est = std::sqrt(nt);
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc(0.0, 0.0);
      for (std::size_t r = 0; r < n; ++r) acc += std::conj(m[r][c]) * tv[r];
      w[c] = acc;
    }
    v = w;
  }
  return est;
}

DecayFit fit_loglog(const std::vector<std::pair<double, double>>& scale_value) {
  DecayFit fit;
  for (const auto& [s, val] : scale_value) {
    if (!(val > 0.0)) {
      fit.degenerate = true;
      continue;
    }
    fit.points.emplace_back(std::log(s), std::log(val));
  }
  if (fit.points.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : fit.points) {
    mx += x;
    my += y;
  }
  mx /= fit.points.size();
  my /= fit.points.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

QsDecayResult qs_decay(const SymbolA& A, const std::vector<double>& s_list, const TorusGrid& g,
                       const QsDecaySpec& spec) {
  const double scale_j = std::ldexp(1.0, spec.j);
  for (double s : s_list)
    if (s > scale_j) throw std::invalid_argument("qs_decay: need s <= 2^j");

  const CurveOperator piece = CurveOperator::dyadic_piece(g, A, spec.j, {1.0, 1.0}, spec.n_quad);
  QsDecayResult out;
  std::vector<std::pair<double, double>> pts;
  for (double s : s_list) {
    const Convolver conv(g, build_mollifier(s, g));
    const FieldOp fwd = [&](const Field2D& f) { return conv.apply(piece.apply(f)); };
    const FieldOp adj = [&](const Field2D& f) { return piece.apply_adjoint(conv.apply_adjoint(f)); };
    const OpNormResult r = opnorm_power(fwd, adj, g, spec.tol, spec.max_iter, spec.seed,
                                        /*validate_linearity=*/false);
    out.rows.push_back({s, r.norm_estimate, r.iterations});
    pts.emplace_back(s, r.norm_estimate);
  }
  out.fit = fit_loglog(pts);
  return out;
}

std::vector<WbpRow> wbp_sweep(const SymbolA& A, const std::vector<double>& r_list,
                              const WbpSpec& spec) {
  // Common normalizations over the whole family keep the bumps an exact
  // parabolic dilation orbit while every scale satisfies the class bounds.
  std::vector<double> half_scales;
  for (double r : r_list) half_scales.push_back(0.5 * r);
  const double alpha_phi = bump_class_scale(r_list);
  const double alpha_psi = 0.5 * bump_class_scale(half_scales);

  std::vector<WbpRow> rows;
  for (double r : r_list) {
    const TorusGrid g(spec.base1 * r, spec.base2 * r * r, spec.n1, spec.n2);
    const BumpSpec phi_spec{{0.0, 0.0}, r};
    const BumpSpec psi_spec{{0.25 * r, 0.125 * r * r}, 0.5 * r};
    const Field2D phi = build_bump_field(phi_spec, alpha_phi, g);
    const Field2D psi = build_bump_field(psi_spec, alpha_psi, g);
    CurveOpSpec cs;
    cs.window = {spec.eps0 * r, spec.R0 * r};
    cs.n_quad = spec.n_quad;
    const CurveOperator op = CurveOperator::commutator(g, A, cs);
    const double pairing = std::abs(inner(psi, op.apply(phi)));
    rows.push_back({r, pairing, pairing / (r * r * r)});
  }
  return rows;
}

double t1_oscillation(const SymbolA& A, const ParaCube& cube, const T1Spec& spec) {
  const auto nodes = pv_nodes({spec.eps, spec.t_max}, spec.n_quad);
  const ParaPoint x0{cube.a, cube.b};

  // Far-field split: plateau 1 on the triple cube, supported in the quadruple.
  auto far_factor = [&](const ParaPoint& y) {
    const double p1 = smooth_step(std::abs(y.x1 - x0.x1), 1.5 * cube.r, 2.0 * cube.r);
    const double p2 = smooth_step(std::abs(y.x2 - x0.x2), 4.5 * cube.r * cube.r, 8.0 * cube.r * cube.r);
    return 1.0 - p1 * p2;
  };

  auto t_of_one = [&](const ParaPoint& x) {
    double acc = 0.0;
    for (const auto& q : nodes) {
      const ParaPoint y = x - curve_point(q.t);
      acc += q.w / (q.t * q.t) * (A(x) - A(y));
    }
    return acc;
  };

  double center_far = 0.0;
  for (const auto& q : nodes) {
    const ParaPoint y = x0 - curve_point(q.t);
    center_far += q.w / (q.t * q.t) * (A(x0) - A(y)) * far_factor(y);
  }

  const int m = spec.n_cube_grid;
  double osc = 0.0;
#pragma omp parallel for reduction(+ : osc) schedule(static)
  for (int idx = 0; idx < m * m; ++idx) {
    const int i = idx / m, j = idx % m;
    const ParaPoint x{cube.a + cube.r * ((i + 0.5) / m - 0.5),
                      cube.b + cube.r * cube.r * ((j + 0.5) / m - 0.5)};
    osc += std::abs(t_of_one(x) - center_far);
  }
  return osc / double(m * m);
}

SigmaSweepResult sigma_uniformity(const SymbolA& A, const TorusGrid& g,
                                  const SigmaSweepSpec& spec) {
  if (spec.n_sigma < 16) throw std::invalid_argument("sigma_uniformity: need n_sigma >= 16");
  SigmaSweepResult out;
  for (int m = 0; m < spec.n_sigma; ++m) {
    const double theta = 2.0 * M_PI * m / spec.n_sigma;
    CurveOpSpec cs;
    cs.sigma = unit_sigma(theta);
    cs.window = spec.window;
    cs.n_quad = spec.n_quad;
    const CurveOperator op = CurveOperator::commutator(g, A, cs);
    const OpNormResult r =
        opnorm_power([&](const Field2D& f) { return op.apply(f); },
                     [&](const Field2D& f) { return op.apply_adjoint(f); }, g, spec.tol,
                     spec.max_iter, spec.seed, /*validate_linearity=*/false);
    out.rows.push_back({theta, r.norm_estimate, r.iterations});
  }
  std::vector<double> norms;
  for (const auto& r : out.rows) {
    out.max_norm = std::max(out.max_norm, r.norm);
    norms.push_back(r.norm);
  }
  std::sort(norms.begin(), norms.end());
  const std::size_t n = norms.size();
  out.median_norm = n % 2 ? norms[n / 2] : 0.5 * (norms[n / 2 - 1] + norms[n / 2]);
  return out;
}

RotDirectResult rotations_vs_direct(const SymbolA& A, const Field2D& f,
                                    const HomKernelProfile& K, const DirectSpec& dspec,
                                    const RotationsSpec& rspec) {
  const Field2D d = direct_commutator(A, f, K, dspec);
  const Field2D r = rotations_commutator(A, f, K, rspec);
  RotDirectResult res;
  res.direct_norm = norm_l2(d);
  const double diff = norm_l2(d - r);
  res.rel_l2_error = res.direct_norm > 0.0 ? diff / res.direct_norm : diff;
  return res;
}

}  // namespace paracomm
