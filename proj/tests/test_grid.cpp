#include "paracomm/grid.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace paracomm;

namespace {

Field2D random_field(const TorusGrid& g, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Field2D f(g);
  for (auto& z : f.v) z = cplx(unif(rng), unif(rng));
  return f;
}

double rel_diff(const Field2D& a, const Field2D& b) {
  const double nb = norm_l2(b);
  return nb > 0 ? norm_l2(a - b) / nb : norm_l2(a - b);
}

}  // namespace

TEST_CASE("transform: constant, roundtrip, Parseval") {
  const TorusGrid g(1.0, 1.5, 16, 32);
  Field2D one(g);
  for (auto& z : one.v) z = cplx(1.0, 0.0);
  const Field2D hat = spectral_transform(one, Direction::forward);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      if (g.k1(i) == 0 && g.k2(j) == 0)
        CHECK(std::abs(hat.at(i, j) - cplx(double(g.size()), 0.0)) < 1e-9);
      else
        CHECK(std::abs(hat.at(i, j)) < 1e-9);
    }

  const Field2D f = random_field(g, 1);
  const Field2D back = spectral_transform(spectral_transform(f, Direction::forward),
                                          Direction::inverse);
  CHECK(rel_diff(back, f) < 1e-12);

  // plain-sum Parseval: sum |f|^2 = (1/(N1 N2)) sum |fhat|^2
  const Field2D fh = spectral_transform(f, Direction::forward);
  double s = 0.0, sh = 0.0;
  for (const auto& z : f.v) s += std::norm(z);
  for (const auto& z : fh.v) sh += std::norm(z);
  CHECK(std::abs(s - sh / double(g.size())) / s < 1e-12);
}

TEST_CASE("multiplier: identity, derivative, composition, linearity") {
  const TorusGrid g(2.0, 1.0, 32, 16);
  const Field2D f = random_field(g, 2);

  MultiplierSpec ident{[](double, double) { return cplx(1.0, 0.0); }, cplx(1.0, 0.0)};
  CHECK(rel_diff(apply_multiplier(f, ident), f) < 1e-12);

  // i*xi1 acts as d/dx1 on a pure mode
  const Field2D sine = sample(g, [&](ParaPoint p) {
    return cplx(std::sin(M_PI * p.x1 / g.L1), 0.0);
  });
  MultiplierSpec ddx{[](double xi1, double) { return cplx(0.0, xi1); }, cplx(0.0, 0.0)};
  const Field2D ds = apply_multiplier(sine, ddx);
  const Field2D expect = sample(g, [&](ParaPoint p) {
    return cplx(M_PI / g.L1 * std::cos(M_PI * p.x1 / g.L1), 0.0);
  });
  CHECK(norm_sup(ds - expect) < 1e-10);

  MultiplierSpec m1{[](double xi1, double xi2) { return cplx(std::cos(xi1), std::sin(xi2)); },
                    cplx(0.5, 0.0)};
  MultiplierSpec m2{[](double xi1, double xi2) { return cplx(xi2, xi1) / (1.0 + xi1 * xi1 + xi2 * xi2); },
                    cplx(0.0, 0.25)};
  MultiplierSpec m12{[&](double xi1, double xi2) { return m1.symbol(xi1, xi2) * m2.symbol(xi1, xi2); },
                     m1.dc_value * m2.dc_value};
  CHECK(rel_diff(apply_multiplier(apply_multiplier(f, m2), m1), apply_multiplier(f, m12)) < 1e-12);

  const Field2D h = random_field(g, 3);
  const cplx a(0.3, -0.8), b(1.1, 0.2);
  const Field2D lhs = apply_multiplier(a * Field2D(f) + b * Field2D(h), m1);
  const Field2D rhs = a * apply_multiplier(f, m1) + b * apply_multiplier(h, m1);
  CHECK(rel_diff(lhs, rhs) < 1e-12);

  MultiplierSpec bad{[](double xi1, double) { return cplx(1.0 / (xi1 - xi1), 0.0); }, cplx(0.0, 0.0)};
  CHECK_THROWS(apply_multiplier(f, bad));
}

TEST_CASE("annulus cutoff: support, value at 1, partition of unity") {
  CHECK(annulus_cutoff(0.5) == 0.0);
  CHECK(annulus_cutoff(0.49) == 0.0);
  CHECK(annulus_cutoff(2.0) == 0.0);
  CHECK(annulus_cutoff(2.3) == 0.0);
  CHECK(annulus_cutoff(-3.0) == 0.0);
  CHECK(annulus_cutoff(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(annulus_cutoff(-1.0) == doctest::Approx(1.0).epsilon(1e-15));

  double sum = 0.0;
  for (int j = -20; j <= 20; ++j) sum += scale_cutoff(0.37, j);
  CHECK(std::abs(sum - 1.0) < 1e-14);

  // telescoped identity over the covered range
  for (double t : {0.011, 0.2, 1.0, 3.7, 100.0}) {
    const int J = 20;
    double s = 0.0;
    for (int j = -J; j <= J; ++j) s += scale_cutoff(t, j);
    if (t >= std::ldexp(1.0, -J + 1) && t <= std::ldexp(1.0, J - 1)) CHECK(std::abs(s - 1.0) < 1e-14);
    CHECK(s == doctest::Approx(partial_partition(t, -J, J)).epsilon(1e-14));
  }
}

TEST_CASE("mollifier: mean zero, unit mass, support") {
  const TorusGrid g(0.5, 0.5, 64, 64);
  for (double s : {0.5, 0.25, 0.125, 0.0625, 0.03125}) {
    const Field2D psi = build_mollifier(s, g);
    cplx mean(0.0, 0.0);
    for (const auto& z : psi.v) mean += z;
    CHECK(std::abs(mean) * g.cell_area() < 1e-12);
    CHECK(norm_l1(psi) == doctest::Approx(1.0).epsilon(1e-12));
    // vanishes outside the parabolic cube I_s (cells wholly outside it)
    for (int i = 0; i < g.N1; ++i)
      for (int j = 0; j < g.N2; ++j) {
        const ParaPoint p = g.point(i, j);
        const bool outside = std::abs(p.x1) > 0.5 * s + 0.5 * g.h1() ||
                             std::abs(p.x2) > 0.5 * s * s + 0.5 * g.h2();
        if (outside) CHECK(psi.at(i, j) == cplx(0.0, 0.0));
      }
  }
  CHECK_THROWS_AS(build_mollifier(2.5, g), std::invalid_argument);   // exceeds torus
  CHECK_THROWS_AS(build_mollifier(0.02, g), std::invalid_argument);  // under-resolved
}

TEST_CASE("interpolation: exact on modes, matches samples, spectral accuracy") {
  const TorusGrid g(1.0, 2.0, 32, 32);
  const Field2D mode = sample(g, [&](ParaPoint p) {
    return std::polar(1.0, M_PI * p.x1 / g.L1 + 3.0 * M_PI * p.x2 / g.L2);
  });
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  SpectralInterpolant interp(mode);
  for (int k = 0; k < 50; ++k) {
    const ParaPoint p{unif(rng), unif(rng)};
    const cplx expect = std::polar(1.0, M_PI * p.x1 / g.L1 + 3.0 * M_PI * p.x2 / g.L2);
    CHECK(std::abs(interp(p) - expect) < 1e-10);
  }
  CHECK(std::abs(trig_interpolate(mode, g.point(7, 12)) - mode.at(7, 12)) < 1e-12);

  // refinement study on a smooth periodized Gaussian bump
  auto smooth = [](const TorusGrid& gg) {
    return sample(gg, [&](ParaPoint p) {
      return cplx(std::exp(std::cos(M_PI * p.x1 / gg.L1) + 0.5 * std::sin(M_PI * p.x2 / gg.L2)), 0.0);
    });
  };
  auto exact = [](const TorusGrid& gg, ParaPoint p) {
    return std::exp(std::cos(M_PI * p.x1 / gg.L1) + 0.5 * std::sin(M_PI * p.x2 / gg.L2));
  };
  const TorusGrid gc(1.0, 1.0, 16, 16), gf(1.0, 1.0, 32, 32);
  SpectralInterpolant ic(smooth(gc)), iff(smooth(gf));
  double ec = 0.0, ef = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ParaPoint p{unif(rng) / 3.0, unif(rng) / 3.0};
    ec = std::max(ec, std::abs(ic(p) - exact(gc, p)));
    ef = std::max(ef, std::abs(iff(p) - exact(gf, p)));
  }
  CHECK(ec / ef > 100.0);  // far better than algebraic order
}

TEST_CASE("upsample: reproduces the interpolant on the fine lattice") {
  const TorusGrid g(1.0, 1.0, 8, 8);
  const Field2D f = random_field(g, 9);
  const Field2D up = upsample(f, 4, 4);
  SpectralInterpolant interp(f);
  for (int i = 0; i < up.grid.N1; i += 3)
    for (int j = 0; j < up.grid.N2; j += 5)
      CHECK(std::abs(up.at(i, j) - interp(up.grid.point(i, j))) < 1e-11);
}

TEST_CASE("bump class: template passes, doubled field fails the sup bound") {
  const TorusGrid g(4.0, 16.0, 64, 64);
  const double r = 4.0;
  const double alpha = bump_class_scale(r);
  const BumpSpec spec{{0.0, 0.0}, r};
  const Field2D phi = build_bump_field(spec, alpha, g);
  const auto rep = bump_class_check(phi, {0.0, 0.0}, r);
  CHECK(rep.pass);
  CHECK(rep.max_abs <= 1.0);
  CHECK(rep.lip_ratio <= 1.0 + 1e-6);
  CHECK(rep.max_deriv <= 1.0 + 1e-6);

  Field2D phi2 = phi;
  phi2 *= cplx(2.0 / rep.max_abs, 0.0);  // sup now 2
  const auto rep2 = bump_class_check(phi2, {0.0, 0.0}, r);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.max_abs > 1.0);
}

TEST_CASE("bump class: parabolic Lipschitz ratio scales like 1/r") {
  // finite-difference sampling oracle over random shifts at fixed rho
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double alpha = bump_class_scale(std::vector<double>{1.0, 2.0, 4.0});
  std::vector<double> ratios;
  for (double r : {1.0, 2.0, 4.0}) {
    const BumpSpec spec{{0.0, 0.0}, r};
    double best = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const double rho = 0.05 * r;
      const ParaPoint y{0.75 * r * unif(rng), 0.75 * r * r * unif(rng)};
      const ParaPoint h{rho * unif(rng), rho * rho * unif(rng)};
      const double diff = std::abs(bump_value(spec, alpha, y + h) - bump_value(spec, alpha, y));
      best = std::max(best, diff / rho);
    }
    ratios.push_back(best);
  }
  // slope of log(ratio) against log(r) should be close to -1
  const double slope = std::log(ratios[2] / ratios[0]) / std::log(4.0);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("bump class membership survives parabolic translation of the center") {
  const TorusGrid g(4.0, 16.0, 64, 64);
  const double r = 2.0;
  const double alpha = bump_class_scale(r);
  const Field2D phi = build_bump_field({{0.7, 1.3}, r}, alpha, g);
  const auto rep = bump_class_check(phi, {0.7, 1.3}, r);
  CHECK(rep.pass);
}
