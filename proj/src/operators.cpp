#include "paracomm/operators.hpp"

#include <algorithm>
#include <cmath>

namespace paracomm {

std::vector<QuadNode> symmetric_panels(const std::vector<double>& edges, int n_quad) {
  auto pos = gauss_panels(edges, n_quad);
  std::vector<QuadNode> out;
  out.reserve(2 * pos.size());
  // Mirror pairs adjacent: odd integrands cancel pairwise, exactly.
  for (const auto& q : pos) {
    out.push_back(q);
    out.push_back({-q.t, q.w});
  }
  return out;
}

static std::vector<double> dyadic_edges(double a, double b) {
  if (!(0.0 < a && a < b)) throw std::invalid_argument("dyadic_edges: need 0 < a < b");
  std::vector<double> e{a};
  for (double x = 2.0 * a; x < b * (1.0 - 1e-12); x *= 2.0) e.push_back(x);
  e.push_back(b);
  return e;
}

std::vector<QuadNode> pv_nodes(const CurveWindow& w, int n_quad) {
  if (!(0.0 < w.eps && w.eps < w.R)) throw std::invalid_argument("pv_nodes: need 0 < eps < R");
  if (n_quad < 8) throw std::invalid_argument("pv_nodes: need n_quad >= 8");
  return symmetric_panels(dyadic_edges(w.eps, w.R), n_quad);
}

void CurveOperator::set_nodes(const SymbolA* A, std::vector<QuadNode> nodes) {
  nodes_ = std::move(nodes);
  if (form_ == Form::bracket) {
    brackets_.assign(nodes_.size(), std::vector<double>(grid_.size()));
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const ParaPoint gp = curve_point(nodes_[k].t, sigma_);
      auto& br = brackets_[k];
      for (int i = 0; i < grid_.N1; ++i)
        for (int j = 0; j < grid_.N2; ++j) {
          const ParaPoint x = grid_.point(i, j);
          br[std::size_t(i) * grid_.N2 + j] = (*A)(x) - (*A)(x - gp);
        }
    }
  }
}

CurveOperator CurveOperator::hilbert(const TorusGrid& g, const CurveOpSpec& spec) {
  CurveOperator op(g, spec.sigma, Form::plain);
  auto nodes = pv_nodes(spec.window, spec.n_quad);
  for (auto& q : nodes) q.w /= q.t;
  op.set_nodes(nullptr, std::move(nodes));
  return op;
}

CurveOperator CurveOperator::commutator(const TorusGrid& g, const SymbolA& A,
                                        const CurveOpSpec& spec) {
  CurveOperator op(g, spec.sigma, Form::bracket);
  auto nodes = pv_nodes(spec.window, spec.n_quad);
  for (auto& q : nodes) q.w /= q.t * q.t;
  op.set_nodes(&A, std::move(nodes));
  return op;
}

CurveOperator CurveOperator::dyadic_piece(const TorusGrid& g, const SymbolA& A, int j,
                                          const Sigma& sigma, int n_quad) {
  CurveOperator op(g, sigma, Form::bracket);
  const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
  auto nodes = symmetric_panels({lo, std::ldexp(1.0, j), hi}, n_quad);
  for (auto& q : nodes) q.w *= scale_cutoff(q.t, j) / (q.t * q.t);
  op.set_nodes(&A, std::move(nodes));
  return op;
}

CurveOperator CurveOperator::single_scale(const TorusGrid& g, const SymbolA& A, int n_quad) {
  CurveOperator op(g, {1.0, 1.0}, Form::bracket);
  auto nodes = gauss_panels({0.5, 1.0, 2.0}, n_quad);
  for (auto& q : nodes) q.w *= annulus_cutoff(q.t) / (q.t * q.t);
  op.set_nodes(&A, std::move(nodes));
  return op;
}

CurveOperator CurveOperator::weighted(const TorusGrid& g, const SymbolA& A, const Sigma& sigma,
                                      const std::vector<double>& edges, int n_quad,
                                      const std::function<double(double)>& weight,
                                      bool symmetric) {
  CurveOperator op(g, sigma, Form::bracket);
  auto nodes = symmetric ? symmetric_panels(edges, n_quad) : gauss_panels(edges, n_quad);
  for (auto& q : nodes) q.w *= weight(q.t);
  op.set_nodes(&A, std::move(nodes));
  return op;
}

namespace {
constexpr std::size_t kNodeBlock = 16;
}

Field2D CurveOperator::apply(const Field2D& f) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("CurveOperator::apply: grid mismatch");
  const Field2D fhat = spectral_transform(f, Direction::forward);
  const std::size_t nb = (nodes_.size() + kNodeBlock - 1) / kNodeBlock;
  std::vector<Field2D> partial(nb, Field2D(grid_));

#pragma omp parallel for schedule(static)
  for (long b = 0; b < long(nb); ++b) {
    std::vector<cplx> ph1(grid_.N1), ph2(grid_.N2);
    Field2D shifted(grid_);
    const std::size_t k0 = b * kNodeBlock;
    const std::size_t k1 = std::min(nodes_.size(), k0 + kNodeBlock);
    for (std::size_t k = k0; k < k1; ++k) {
      const ParaPoint gp = curve_point(nodes_[k].t, sigma_);
      for (int i = 0; i < grid_.N1; ++i) ph1[i] = std::polar(1.0, -grid_.xi1(i) * gp.x1);
      for (int j = 0; j < grid_.N2; ++j) ph2[j] = std::polar(1.0, -grid_.xi2(j) * gp.x2);
      for (int i = 0; i < grid_.N1; ++i)
        for (int j = 0; j < grid_.N2; ++j) shifted.at(i, j) = fhat.at(i, j) * ph1[i] * ph2[j];
      shifted = spectral_transform(shifted, Direction::inverse);
      const double w = nodes_[k].w;
      if (form_ == Form::bracket) {
        const auto& br = brackets_[k];
        for (std::size_t m = 0; m < shifted.v.size(); ++m)
          partial[b].v[m] += w * br[m] * shifted.v[m];
      } else {
        for (std::size_t m = 0; m < shifted.v.size(); ++m) partial[b].v[m] += w * shifted.v[m];
      }
    }
  }

  Field2D out(grid_);
  for (const auto& p : partial) out += p;
  return out;
}

Field2D CurveOperator::apply_adjoint(const Field2D& f) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("CurveOperator::apply_adjoint: grid mismatch");
  const std::size_t nb = (nodes_.size() + kNodeBlock - 1) / kNodeBlock;
  std::vector<Field2D> partial(nb, Field2D(grid_));

#pragma omp parallel for schedule(static)
  for (long b = 0; b < long(nb); ++b) {
    std::vector<cplx> ph1(grid_.N1), ph2(grid_.N2);
    Field2D tmp(grid_);
    const std::size_t k0 = b * kNodeBlock;
    const std::size_t k1 = std::min(nodes_.size(), k0 + kNodeBlock);
    for (std::size_t k = k0; k < k1; ++k) {
      const double w = nodes_[k].w;
      if (form_ == Form::bracket) {
        const auto& br = brackets_[k];
        for (std::size_t m = 0; m < tmp.v.size(); ++m) tmp.v[m] = br[m] * f.v[m];
      } else {
        tmp.v = f.v;
      }
      Field2D that = spectral_transform(tmp, Direction::forward);
      const ParaPoint gp = curve_point(nodes_[k].t, sigma_);
      for (int i = 0; i < grid_.N1; ++i) ph1[i] = std::polar(1.0, grid_.xi1(i) * gp.x1);
      for (int j = 0; j < grid_.N2; ++j) ph2[j] = std::polar(1.0, grid_.xi2(j) * gp.x2);
      for (int i = 0; i < grid_.N1; ++i)
        for (int j = 0; j < grid_.N2; ++j) partial[b].at(i, j) += w * that.at(i, j) * ph1[i] * ph2[j];
    }
  }

  Field2D acc(grid_);
  for (const auto& p : partial) acc += p;
  return spectral_transform(acc, Direction::inverse);
}

// ---- mollification ----------------------------------------------------------

Convolver::Convolver(const TorusGrid& g, const Field2D& kernel)
    : grid_(g), kernel_hat_(spectral_transform(kernel, Direction::forward)),
      area_(g.cell_area()) {
  if (!(kernel.grid == g)) throw std::invalid_argument("Convolver: grid mismatch");
}

Field2D Convolver::apply(const Field2D& f) const {
  Field2D hat = spectral_transform(f, Direction::forward);
  for (std::size_t m = 0; m < hat.v.size(); ++m) hat.v[m] *= kernel_hat_.v[m] * area_;
  return spectral_transform(hat, Direction::inverse);
}

Field2D Convolver::apply_adjoint(const Field2D& f) const {
  Field2D hat = spectral_transform(f, Direction::forward);
  for (std::size_t m = 0; m < hat.v.size(); ++m) hat.v[m] *= std::conj(kernel_hat_.v[m]) * area_;
  return spectral_transform(hat, Direction::inverse);
}

double Convolver::max_symbol() const {
  double s = 0.0;
  for (const auto& z : kernel_hat_.v) s = std::max(s, std::abs(z));
  return s * area_;
}

cplx Convolver::symbol_at(int m1, int m2) const { return kernel_hat_.at(m1, m2) * area_; }

Field2D q_smooth(const Field2D& f, double s) {
  Convolver conv(f.grid, build_mollifier(s, f.grid));
  return conv.apply(f);
}

// ---- homogeneous kernels -----------------------------------------------------

double heat_kernel(const ParaPoint& x) {
  if (x.x1 == 0.0 && x.x2 == 0.0) throw std::invalid_argument("heat_kernel: origin");
  if (x.x2 <= 0.0) return 0.0;
  return std::exp(-x.x1 * x.x1 / (4.0 * x.x2)) / (x.x2 * x.x2);
}

HomKernelProfile heat_profile() {
  return {[](double s1, double s2) {
    if (s2 <= 0.0) return 0.0;
    return std::exp(-s1 * s1 / (4.0 * s2)) / (s2 * s2);
  }};
}

double hom_extend(const HomKernelProfile& profile, const ParaPoint& x) {
  const PolarCoords pc = to_polar(x);
  const double r2 = pc.rho * pc.rho;
  return profile.value(pc.sigma.s1, pc.sigma.s2) / (r2 * r2);
}

bool profile_even_x1(const HomKernelProfile& profile, int n_check, double tol) {
  for (int m = 0; m < n_check; ++m) {
    const double th = 2.0 * M_PI * m / n_check;
    const double a = profile.value(std::cos(th), std::sin(th));
    const double b = profile.value(-std::cos(th), std::sin(th));
    if (std::abs(a - b) > tol * (1.0 + std::abs(a))) return false;
  }
  return true;
}

double profile_l1(const HomKernelProfile& profile, int n) {
  double s = 0.0;
  for (int m = 0; m < n; ++m) {
    const double th = 2.0 * M_PI * m / n;
    const double s2 = std::sin(th);
    s += std::abs(profile.value(std::cos(th), s2)) * (1.0 + s2 * s2);
  }
  return s * 2.0 * M_PI / n;
}

// ---- direct route -------------------------------------------------------------

namespace {

// Range of the parabolic norm over an axis-aligned displacement cell.
inline void pnorm_range(double d1, double d2, double h1, double h2, double& lo, double& hi) {
  const double a1 = std::abs(d1);
  const double lo1 = std::max(0.0, a1 - 0.5 * h1), hi1 = a1 + 0.5 * h1;
  const double a2 = std::abs(d2);
  const double lo2 = std::max(0.0, a2 - 0.5 * h2), hi2 = a2 + 0.5 * h2;
  lo = lo1 + std::sqrt(lo2);
  hi = hi1 + std::sqrt(hi2);
}

}  // namespace

Field2D direct_commutator(const SymbolA& A, const Field2D& f, const HomKernelProfile& K,
                          const DirectSpec& spec) {
  const TorusGrid& g = f.grid;
  if (!(spec.inner_cut > 0.0 && spec.inner_cut < spec.outer_cut))
    throw std::invalid_argument("direct_commutator: need 0 < inner_cut < outer_cut");
  if (spec.outer_cut > std::min(g.L1, std::sqrt(g.L2)))
    throw std::invalid_argument("direct_commutator: outer_cut exceeds the half torus");
  if (!profile_even_x1(K)) throw std::invalid_argument("direct_commutator: profile must be even in x1");

  const int sub = std::max(1, spec.subdivide);
  const int U = 2 * sub;
  const double h1 = g.h1(), h2 = g.h2(), area = g.cell_area();

  struct FullCell { int di, dj; double kw; };
  struct SubCell { long pi, pj; double kw; };
  std::vector<FullCell> full;
  std::vector<SubCell> subs;

  for (int di = -g.N1 / 2; di < g.N1 / 2; ++di)
    for (int dj = -g.N2 / 2; dj < g.N2 / 2; ++dj) {
      const double d1 = di * h1, d2 = dj * h2;
      double lo, hi;
      pnorm_range(d1, d2, h1, h2, lo, hi);
      if (hi < spec.inner_cut || lo > spec.outer_cut) continue;
      if (lo >= spec.inner_cut && hi <= spec.outer_cut) {
        full.push_back({di, dj, hom_extend(K, {d1, d2}) * area});
      } else {
        const double subarea = area / double(sub * sub);
        for (int u = 0; u < sub; ++u)
          for (int v = 0; v < sub; ++v) {
            // subcell center on the 2*sub refined lattice
            const long pi = long(di) * U + (2 * u + 1) - sub;
            const long pj = long(dj) * U + (2 * v + 1) - sub;
            const double s1 = pi * h1 / U, s2 = pj * h2 / U;
            const double pn = para_norm({s1, s2});
            if (pn < spec.inner_cut || pn > spec.outer_cut) continue;
            subs.push_back({pi, pj, hom_extend(K, {s1, s2}) * subarea});
          }
      }
    }

  const Field2D fup = upsample(f, U, U);
  const bool table = A.periodic();
  Field2D Abase = table ? A.sample_on(g) : Field2D(g);
  Field2D Aup = table ? upsample(Abase, U, U) : Field2D();

  Field2D out(g);
  const long NU1 = long(g.N1) * U, NU2 = long(g.N2) * U;

#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < long(g.size()); ++idx) {
    const int i = int(idx / g.N2), j = int(idx % g.N2);
    const ParaPoint x = g.point(i, j);
    const double ax = table ? Abase.at(i, j).real() : A(x);
    cplx acc(0.0, 0.0);
    for (const auto& c : full) {
      const int yi = ((i - c.di) % g.N1 + g.N1) % g.N1;
      const int yj = ((j - c.dj) % g.N2 + g.N2) % g.N2;
      const double ay = table ? Abase.at(yi, yj).real()
                              : A({x.x1 - c.di * h1, x.x2 - c.dj * h2});
      acc += (ax - ay) * c.kw * f.at(yi, yj);
    }
    for (const auto& c : subs) {
      const long yi = (((long(i) * U - c.pi) % NU1) + NU1) % NU1;
      const long yj = (((long(j) * U - c.pj) % NU2) + NU2) % NU2;
      const double ay = table ? Aup.v[std::size_t(yi) * NU2 + yj].real()
                              : A({x.x1 - c.pi * h1 / U, x.x2 - c.pj * h2 / U});
      acc += (ax - ay) * c.kw * fup.v[std::size_t(yi) * NU2 + yj];
    }
    out.v[idx] = acc;
  }
  return out;
}

Field2D rotations_commutator(const SymbolA& A, const Field2D& f, const HomKernelProfile& K,
                             const RotationsSpec& spec) {
  const TorusGrid& g = f.grid;
  if (spec.n_sigma < 16) throw std::invalid_argument("rotations_commutator: need n_sigma >= 16");
  if (!profile_even_x1(K))
    throw std::invalid_argument("rotations_commutator: profile must be even in x1");

  Field2D out(g);
  for (int m = 0; m < spec.n_sigma; ++m) {
    const double th = 2.0 * M_PI * m / spec.n_sigma;
    const Sigma sig = unit_sigma(th);
    const double kval = K.value(sig.s1, sig.s2);
    if (kval == 0.0) continue;
    // ||gamma_sigma(t)|| = |t| (|s1| + sqrt|s2|): the annulus cut in the plane
    // is an exact |t| window along each direction.
    const double rate = std::abs(sig.s1) + std::sqrt(std::abs(sig.s2));
    const double t_in = spec.inner_cut / rate, t_out = spec.outer_cut / rate;
    CurveOperator op = CurveOperator::weighted(
        g, A, sig, dyadic_edges(t_in, t_out), spec.n_quad,
        [](double t) { return 1.0 / (t * t); }, /*symmetric=*/true);
    const double coeff = 0.5 * (2.0 * M_PI / spec.n_sigma) * kval * (1.0 + sig.s2 * sig.s2);
    Field2D term = op.apply(f);
    term *= cplx(coeff, 0.0);
    out += term;
  }
  return out;
}

}  // namespace paracomm
