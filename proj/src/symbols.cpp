#include "paracomm/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace paracomm {

SymbolA::SymbolA(std::string name, std::function<double(ParaPoint)> eval, bool periodic)
    : name_(std::move(name)), eval_(std::move(eval)), periodic_(periodic) {}

SymbolA::SymbolA(std::string name, Field2D samples)
    : name_(std::move(name)), periodic_(true),
      interp_(std::make_shared<SpectralInterpolant>(samples)) {
  auto interp = interp_;
  eval_ = [interp](ParaPoint p) { return (*interp)(p).real(); };
}

double SymbolA::operator()(const ParaPoint& p) const { return eval_(p); }

Field2D SymbolA::sample_on(const TorusGrid& g) const {
  if (!periodic_)
    throw std::invalid_argument("SymbolA: non-periodic symbol cannot be sampled onto a torus");
  return sample(g, [this](ParaPoint p) { return cplx(eval_(p), 0.0); });
}

std::vector<std::string> symbol_generator_names() {
  return {"zero", "constant", "linear_x1", "sine_x1", "sine_x2", "mixed", "random_bandlimited"};
}

namespace {

SymbolA make_random_bandlimited(const TorusGrid& g, const SymbolParams& p) {
  struct Mode {
    double xi1, xi2, a, b;
  };
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<Mode> modes;
  for (int k1 = 0; k1 <= p.band; ++k1)
    for (int k2 = -p.band; k2 <= p.band; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;  // one representative per conjugate pair
      modes.push_back({M_PI * k1 / g.L1, M_PI * k2 / g.L2, unif(rng), unif(rng)});
    }
  auto raw = [modes](ParaPoint x) {
    double s = 0.0;
    for (const auto& m : modes) {
      const double ph = m.xi1 * x.x1 + m.xi2 * x.x2;
      s += m.a * std::cos(ph) + m.b * std::sin(ph);
    }
    return s;
  };
  // Scale so the x1-direction Lipschitz constant is at most one.
  double dmax = 0.0;
  const int n = 200;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ParaPoint x{-g.L1 + 2.0 * g.L1 * i / n, -g.L2 + 2.0 * g.L2 * j / n};
      double d = 0.0;
      for (const auto& m : modes) {
        const double ph = m.xi1 * x.x1 + m.xi2 * x.x2;
        d += m.xi1 * (-m.a * std::sin(ph) + m.b * std::cos(ph));
      }
      dmax = std::max(dmax, std::abs(d));
    }
  const double scale = dmax > 0.0 ? 1.0 / (1.02 * dmax) : 1.0;
  return SymbolA("random_bandlimited",
                 [raw, scale](ParaPoint x) { return scale * raw(x); });
}

}  // namespace

SymbolA make_symbol(const std::string& name, const TorusGrid& g, const SymbolParams& p) {
  if (name == "zero") return SymbolA("zero", [](ParaPoint) { return 0.0; });
  if (name == "constant")
    return SymbolA("constant", [c = p.c](ParaPoint) { return c; });
  if (name == "linear_x1")
    return SymbolA("linear_x1", [c = p.c](ParaPoint x) { return c * x.x1; },
                   /*periodic=*/false);
  if (name == "sine_x1") {
    const double w = M_PI * p.k1 / g.L1;
    return SymbolA("sine_x1", [w](ParaPoint x) { return std::sin(w * x.x1); });
  }
  if (name == "sine_x2") {
    const double w = M_PI * p.k2 / g.L2;
    return SymbolA("sine_x2", [w](ParaPoint x) { return std::sin(w * x.x2); });
  }
  if (name == "mixed") {
    const double w1 = M_PI * p.k1 / g.L1;
    const double w2 = M_PI * p.k2 / g.L2;
    return SymbolA("mixed", [w1, w2](ParaPoint x) {
      return 0.5 * std::sin(w1 * x.x1) + 0.5 * std::sin(w2 * x.x2);
    });
  }
  if (name == "random_bandlimited") return make_random_bandlimited(g, p);
  throw std::invalid_argument("make_symbol: unknown generator '" + name + "'");
}

double lip_half_seminorm(const SymbolA& A, int n_samples, const std::vector<double>& r_set,
                         const TorusGrid& box, unsigned long long seed) {
  if (n_samples < 1) throw std::invalid_argument("lip_half_seminorm: need n_samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double best = 0.0;
  for (double r : r_set) {
    const double r2 = r * r;
    for (int k = 0; k < n_samples; ++k) {
      ParaPoint x{box.L1 * unif(rng), box.L2 * unif(rng)};
      const double base = A(x);
      // Random interior shift plus the corner shifts, which attain the sup
      // for monotone symbols.
      const ParaPoint shifts[] = {{r * unif(rng), r2 * unif(rng)},
                                  {r, r2}, {-r, r2}, {r, -r2}, {-r, -r2},
                                  {r, 0.0}, {-r, 0.0}, {0.0, r2}, {0.0, -r2}};
      for (const auto& h : shifts)
        best = std::max(best, std::abs(A(x + h) - base) / r);
    }
  }
  return best;
}

MultiplierSpec frac_diff_symbol(FracDiff which) {
  if (which == FracDiff::full)
    return {[](double xi1, double xi2) { return std::sqrt(cplx(xi1 * xi1, -xi2)); },
            cplx(0.0, 0.0)};
  return {[](double xi1, double xi2) { return xi2 / std::sqrt(cplx(xi1 * xi1, -xi2)); },
          cplx(0.0, 0.0)};
}

Field2D frac_diff(const Field2D& a, FracDiff which) {
  return apply_multiplier(a, frac_diff_symbol(which));
}

namespace {

// Mean oscillation of b over the half-open cube, by grid summation with
// periodic wrap. Returns -1 if the cube holds fewer than 4 samples per axis.
double mean_oscillation(const Field2D& b, const ParaCube& c) {
  const TorusGrid& g = b.grid;
  const double r2 = c.r * c.r;
  const auto range = [](double lo, double width, double origin, double h, int n,
                        int& i0, int& count) {
    i0 = int(std::ceil((lo - origin) / h - 1e-12));
    const int i1 = int(std::ceil((lo + width - origin) / h - 1e-12));
    count = i1 - i0;
    i0 = ((i0 % n) + n) % n;
  };
  int i0, c1, j0, c2;
  range(c.a - 0.5 * c.r, c.r, -g.L1, g.h1(), g.N1, i0, c1);
  range(c.b - 0.5 * r2, r2, -g.L2, g.h2(), g.N2, j0, c2);
  if (c1 < 4 || c2 < 4) return -1.0;
  cplx mean(0.0, 0.0);
  for (int di = 0; di < c1; ++di)
    for (int dj = 0; dj < c2; ++dj)
      mean += b.at((i0 + di) % g.N1, (j0 + dj) % g.N2);
  mean /= double(c1) * double(c2);
  double osc = 0.0;
  for (int di = 0; di < c1; ++di)
    for (int dj = 0; dj < c2; ++dj)
      osc += std::abs(b.at((i0 + di) % g.N1, (j0 + dj) % g.N2) - mean);
  return osc / (double(c1) * double(c2));
}

double root_scale(const TorusGrid& g) {
  return std::min(2.0 * g.L1, std::sqrt(2.0 * g.L2));
}

}  // namespace

int max_bmo_depth(const TorusGrid& g) {
  double r = root_scale(g);
  int depth = 0;
  while (r >= 4.0 * g.h1() && r * r >= 4.0 * g.h2()) {
    ++depth;
    r *= 0.5;
  }
  return depth;
}

double bmo_parabolic(const Field2D& b, int depth) {
  if (depth < 1) throw std::invalid_argument("bmo_parabolic: depth must be >= 1");
  if (depth > max_bmo_depth(b.grid))
    throw std::invalid_argument("bmo_parabolic: cube under-resolved at requested depth");
  const TorusGrid& g = b.grid;
  const double r0 = root_scale(g);

  std::vector<ParaCube> cubes;
  for (int level = 0; level < depth; ++level) {
    const double r = r0 * std::pow(0.5, level);
    const double r2 = r * r;
    const int n1 = std::max(1, int(std::ceil(2.0 * g.L1 / r)));
    const int n2 = std::max(1, int(std::ceil(2.0 * g.L2 / r2)));
    for (int shift = 0; shift < 2; ++shift) {
      const double off1 = shift ? 0.5 * r : 0.0;
      const double off2 = shift ? 0.5 * r2 : 0.0;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
          cubes.emplace_back(-g.L1 + (i + 0.5) * r + off1, -g.L2 + (j + 0.5) * r2 + off2, r);
    }
  }

  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (long k = 0; k < long(cubes.size()); ++k) {
    const double osc = mean_oscillation(b, cubes[k]);
    if (osc > best) best = osc;
  }
  return best;
}

ConditionReport check_condition(const SymbolA& A, const TorusGrid& g, int n_samples,
                                unsigned long long seed) {
  ConditionReport rep;
  rep.name = A.name();
  rep.n_samples = n_samples;
  rep.seed = seed;

  rep.lip_half = lip_half_seminorm(A, n_samples, {0.25, 0.5, 1.0}, g, seed);

  // Lipschitz constant in the x1 direction: dense points, log-spaced shifts.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int k = 0; k < n_samples; ++k) {
    ParaPoint x{g.L1 * unif(rng), g.L2 * unif(rng)};
    const double base = A(x);
    for (int e = 0; e < 12; ++e) {
      const double h = g.L1 * std::pow(0.5, e + 2);
      for (double sgn : {1.0, -1.0}) {
        const double d = std::abs(A({x.x1 + sgn * h, x.x2}) - base) / h;
        rep.sup_dx1 = std::max(rep.sup_dx1, d);
      }
    }
  }

  // The only non-periodic generator is linear in x1; its x2 fractional
  // derivative vanishes identically, so the BMO entry is zero.
  if (A.periodic()) {
    const Field2D d2a = frac_diff(A.sample_on(g), FracDiff::partial);
    rep.bmo_d2a = bmo_parabolic(d2a, max_bmo_depth(g));
  }
  return rep;
}

}  // namespace paracomm
