#include "paracomm/geometry.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace paracomm;

TEST_CASE("parabolic norm: values and homogeneity") {
  CHECK(para_norm({0.0, 0.0}) == 0.0);
  CHECK(para_norm({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));

  // degree-1 homogeneity under the dilations
  const ParaPoint p{1.0, -1.0};
  CHECK(para_norm(dilate(p, 3.0)) == doctest::Approx(3.0 * para_norm(p)).epsilon(1e-12));
  CHECK(para_norm(dilate(p, 3.0)) == doctest::Approx(6.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  std::uniform_real_distribution<double> urho(0.01, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const ParaPoint q{unif(rng), unif(rng)};
    const double rho = urho(rng);
    CHECK(para_norm(dilate(q, rho)) == doctest::Approx(rho * para_norm(q)).epsilon(1e-12));
  }
}

TEST_CASE("dilate: group law and validation") {
  CHECK(dilate({1.0, 1.0}, 2.0).x1 == 2.0);
  CHECK(dilate({1.0, 1.0}, 2.0).x2 == 4.0);
  const ParaPoint p{0.3, -0.7};
  CHECK(dilate(p, 1.0) == p);
  const ParaPoint q = dilate(dilate(p, 2.0), 0.5);
  CHECK(q.x1 == doctest::Approx(p.x1).epsilon(1e-15));
  CHECK(q.x2 == doctest::Approx(p.x2).epsilon(1e-15));
  CHECK_THROWS_AS(dilate(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dilate(p, -1.0), std::invalid_argument);
}

TEST_CASE("curve point") {
  CHECK(curve_point(2.0, Sigma{1.0, 0.0}) == ParaPoint{2.0, 0.0});
  CHECK(curve_point(2.0, Sigma{0.0, 1.0}) == ParaPoint{0.0, 4.0});
  const ParaPoint p = curve_point(1.0, Sigma{0.6, 0.8});
  CHECK(p.x1 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p.x2 == doctest::Approx(0.8).epsilon(1e-15));
  // paper default (1,1) is accepted although not unit
  CHECK(curve_point(2.0, Sigma{1.0, 1.0}) == ParaPoint{2.0, 4.0});
  CHECK_FALSE(Sigma{1.0, 1.0}.is_unit());
}

TEST_CASE("polar coordinates: closed-form root and roundtrip") {
  CHECK(from_polar({2.0, {1.0, 0.0}}) == ParaPoint{2.0, 0.0});

  // oracle: rho^2 = (x1^2 + sqrt(x1^4 + 4 x2^2))/2 evaluated by hand for (1,1)
  const PolarCoords pc = to_polar({1.0, 1.0});
  const double rho2 = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK(pc.rho == doctest::Approx(std::sqrt(rho2)).epsilon(1e-12));
  CHECK(pc.rho == doctest::Approx(1.27202).epsilon(1e-5));
  CHECK(pc.sigma.s1 == doctest::Approx(0.78615).epsilon(1e-5));
  CHECK(pc.sigma.s2 == doctest::Approx(0.61803).epsilon(1e-5));
  CHECK(pc.sigma.is_unit(1e-12));

  CHECK_THROWS_AS(to_polar({0.0, 0.0}), std::invalid_argument);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  double max_err = 0.0;
  for (int k = 0; k < 10000; ++k) {
    ParaPoint p{unif(rng), unif(rng)};
    if (p.x1 == 0.0 && p.x2 == 0.0) continue;
    const ParaPoint q = from_polar(to_polar(p));
    max_err = std::max(max_err, std::abs(q.x1 - p.x1) + std::abs(q.x2 - p.x2));
    CHECK(to_polar(p).sigma.is_unit(1e-12));
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("polar weight and the volume of the unit ball") {
  CHECK(polar_weight({1.0, {1.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(polar_weight({1.0, {0.0, 1.0}}) == doctest::Approx(2.0));

  // integral of the weight over rho <= 1: (int_0^1 rho^2) * int (1+s2^2) = (1/3)(3 pi) = pi
  const int n = 512;
  double quad = 0.0;
  for (int m = 0; m < n; ++m) {
    const double th = 2.0 * M_PI * m / n;
    quad += (1.0 + std::sin(th) * std::sin(th)) * (2.0 * M_PI / n) / 3.0;
  }
  CHECK(quad == doctest::Approx(M_PI).epsilon(1e-10));

  // Monte Carlo area of { ||x||-polar radius <= 1 } inside [-1,1]^2
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int nmc = 1000000;
  long hits = 0;
  for (int k = 0; k < nmc; ++k) {
    ParaPoint p{unif(rng), unif(rng)};
    if (p.x1 == 0.0 && p.x2 == 0.0) continue;
    if (to_polar(p).rho <= 1.0) ++hits;
  }
  const double area = 4.0 * double(hits) / nmc;
  CHECK(std::abs(area - quad) / quad < 0.01);
}

TEST_CASE("cube membership and children") {
  const ParaCube unit(0.0, 0.0, 1.0);
  CHECK(unit.contains({0.49, -0.49}));
  CHECK_FALSE(unit.contains({0.51, 0.0}));
  CHECK(unit.volume() == doctest::Approx(1.0));

  const ParaCube big(0.0, 0.0, 2.0);
  CHECK(big.volume() == doctest::Approx(8.0));
  const auto kids = big.children();
  double total = 0.0;
  for (const auto& c : kids) {
    CHECK(c.r == doctest::Approx(1.0));
    CHECK(c.volume() == doctest::Approx(1.0));
    total += c.volume();
  }
  CHECK(total == doctest::Approx(big.volume()));

  // half-open tiling: every parent point lies in exactly one child
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u1(-1.0, 1.0), u2(-2.0, 2.0);
  for (int k = 0; k < 10000; ++k) {
    const ParaPoint p{u1(rng), u2(rng)};
    if (!big.contains(p)) continue;
    int count = 0;
    for (const auto& c : kids) count += c.contains(p) ? 1 : 0;
    CHECK(count == 1);
  }

  CHECK_THROWS_AS(ParaCube(0.0, 0.0, 0.0), std::invalid_argument);
}
