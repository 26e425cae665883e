#include "doctest.h"

#include <cmath>
#include <vector>

#include "hmlab/harmonic2d.hpp"
#include "hmlab/random.hpp"

using namespace hmlab;

namespace {

DiskHarmonicMap from_terms(int n, std::initializer_list<std::pair<int, cplx>> terms) {
  std::vector<cplx> c(2 * n + 1);
  for (auto [k, v] : terms) c[k + n] = v;
  return DiskHarmonicMap(c);
}

DiskHarmonicMap random_band_limited(Rng& rng, int n) {
  std::vector<cplx> c(2 * n + 1);
  for (int k = -n; k <= n; ++k) c[k + n] = cplx(rng.normal(), rng.normal()) * std::pow(0.7, std::abs(k));
  return DiskHarmonicMap(c);
}

DiskHarmonicMap ellipse_map(double a1, double a2) {
  auto curve = std::make_shared<const ConvexCurve>(ellipse_curve(2.0, 1.0));
  auto f = boundary_from_speed(curve, [=](double t) { return 1.0 + a1 * std::cos(t) + a2 * std::sin(2.0 * t); });
  return extend(f);
}

// Poisson integral by trapezoid quadrature against boundary samples.
cplx poisson_oracle(const DiskHarmonicMap& h, cplx z, int samples) {
  const double r = std::abs(z), th = std::arg(z);
  cplx acc{};
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    const double kernel = (1 - r * r) / (1 - 2 * r * std::cos(th - t) + r * r);
    acc += kernel * eval(h, std::polar(1.0, t));
  }
  return acc / static_cast<double>(samples);
}

// Central differences of eval with Richardson (steps h, h/2).
std::pair<cplx, cplx> fd_wirtinger(const DiskHarmonicMap& h, cplx z, double step) {
  auto diff = [&](cplx dir, double s) { return (eval(h, z + s * dir) - eval(h, z - s * dir)) / (2.0 * s); };
  auto rich = [&](cplx dir) { return (4.0 * diff(dir, 0.5 * step) - diff(dir, step)) / 3.0; };
  const cplx hx = rich({1, 0}), hy = rich({0, 1});
  return {0.5 * (hx - cplx(0, 1) * hy), 0.5 * (hx + cplx(0, 1) * hy)};
}

}  // namespace

TEST_CASE("linear and rotated extensions") {
  auto id = from_terms(4, {{1, 1.0}});
  CHECK(std::abs(eval(id, 0.5) - 0.5) < 1e-15);
  auto [hz, hzb] = wirtinger(id, {0.2, 0.3});
  CHECK(std::abs(hz - 1.0) < 1e-15);
  CHECK(std::abs(hzb) < 1e-15);
  CHECK(jacobian(id, {0.1, -0.4}) == doctest::Approx(1.0));

  const cplx c1(0.7, 0.2), cm1(0.1, -0.3);
  auto lin = from_terms(3, {{1, c1}, {-1, cm1}});
  const cplx z(0.3, -0.5);
  CHECK(std::abs(eval(lin, z) - (c1 * z + cm1 * std::conj(z))) < 1e-15);

  auto curve = std::make_shared<const ConvexCurve>(circle_curve(1.0));
  const double alpha = 1.1;
  auto rot = extend(boundary_from_speed(curve, [](double) { return 1.0; }, 2048, alpha));
  CHECK(std::abs(eval(rot, z) - std::polar(1.0, alpha) * z) < 1e-12);
  CHECK_THROWS_AS(eval(id, {1.0, 0.1}), Error);
  CHECK_THROWS_AS(jacobian(id, {1.0, 0.0}), Error);
}

TEST_CASE("the 4z + zbar^2/2 example") {
  auto h = from_terms(4, {{1, 4.0}, {-2, 0.5}});
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const cplx z = std::polar(0.95 * std::sqrt(rng.uniform()), rng.uniform(0, kTwoPi));
    auto [hz, hzb] = wirtinger(h, z);
    CHECK(std::abs(hz - 4.0) < 1e-14);
    CHECK(std::abs(hzb - std::conj(z)) < 1e-14);
    CHECK(jacobian(h, z) == doctest::Approx(16.0 - std::norm(z)).epsilon(1e-14));
    CHECK(std::abs(jacobian_z(h, z) + std::conj(z)) < 1e-14);
    auto sides = log_jacobian_curvature(h, z);
    CHECK(std::abs(sides.rhs - 16.0) < 1e-12);
    CHECK(std::abs(sides.lhs - 16.0) < (std::abs(z) <= 0.8 ? 1e-9 : 1e-7));
    auto recip = reciprocal_jacobian_curvature(h, z);
    const double j = 16.0 - std::norm(z);
    CHECK(recip.rhs == doctest::Approx(2.0 * std::norm(z) + j).epsilon(1e-13));
    CHECK(std::abs(recip.lhs - recip.rhs) < 1e-8);
  }
  CHECK(jacobian(h, 0.0) == 16.0);
  PolarGrid grid{16, 64, 0.9};
  CHECK(second_dilatation_sup(h, grid) == doctest::Approx(0.225).epsilon(1e-12));
}

TEST_CASE("affine maps have zero curvature identities") {
  for (auto h : {from_terms(2, {{1, 1.0}}), from_terms(2, {{1, 1.0}, {-1, 0.3}})}) {
    auto sides = log_jacobian_curvature(h, {0.2, 0.1});
    CHECK(std::abs(sides.lhs) < 1e-10);
    CHECK(sides.rhs == 0.0);
  }
  auto h = from_terms(2, {{1, 1.0}, {-1, 0.3}});
  CHECK(second_dilatation_sup(h, PolarGrid{8, 32, 0.9}) == doctest::Approx(0.3).epsilon(1e-14));
  auto id = from_terms(2, {{1, 1.0}});
  CHECK(second_dilatation_sup(id, PolarGrid{8, 32, 0.9}) == 0.0);
  auto conj_only = from_terms(2, {{-1, 1.0}});
  CHECK_THROWS_AS(second_dilatation_sup(conj_only, PolarGrid{8, 32, 0.9}), Error);
}

TEST_CASE("radial derivative, energy and Hall quantities") {
  auto id = from_terms(2, {{1, 1.0}});
  CHECK(std::abs(radial_derivative(id, 0.5, 0.3) - std::polar(1.0, 0.3)) < 1e-15);
  auto sq = from_terms(3, {{2, 1.0}});
  CHECK(std::abs(radial_derivative(sq, 0.4, 0.7) - 2.0 * 0.4 * std::polar(1.0, 1.4)) < 1e-15);
  CHECK(heinz_energy(id, 0.3) == 1.0);
  auto bar = from_terms(2, {{-1, 1.0}});
  CHECK(heinz_energy(bar, 0.3) == 1.0);
  CHECK(hall_quantities(id).energy == 1.0);
  CHECK(hall_quantities(id).analytic_one == 1.0);
  CHECK(hall_quantities(bar).energy == 1.0);
  CHECK(hall_quantities(bar).analytic_one == 0.0);
  CHECK_THROWS_AS(radial_derivative(id, 1.0, 0.0), Error);
}

TEST_CASE("series agrees with Poisson quadrature and finite differences") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    auto h = random_band_limited(rng, 24);
    CHECK(std::abs(eval(h, 0.0) - h.coefficient(0)) < 1e-15);
    for (int i = 0; i < 10; ++i) {
      const cplx z = std::polar(0.9, rng.uniform(0, kTwoPi));
      CHECK(std::abs(eval(h, z) - poisson_oracle(h, z, 1024)) < 1e-10);
    }
    // Circle means equal c_0.
    for (double rho : {0.2, 0.6, 0.95}) {
      cplx acc{};
      for (int i = 0; i < 128; ++i) acc += eval(h, std::polar(rho, kTwoPi * i / 128));
      CHECK(std::abs(acc / 128.0 - h.coefficient(0)) < 1e-10);
    }
    for (int i = 0; i < 100; ++i) {
      const cplx z = std::polar(0.8 * std::sqrt(rng.uniform()), rng.uniform(0, kTwoPi));
      auto [hz, hzb] = wirtinger(h, z);
      auto [fz, fzb] = fd_wirtinger(h, z, 1e-3);
      CHECK(std::abs(hz - fz) < 1e-7);
      CHECK(std::abs(hzb - fzb) < 1e-7);
      const double r = std::abs(z), th = std::arg(z);
      const cplx fd_r = (eval(h, std::polar(r + 1e-4, th)) - eval(h, std::polar(r - 1e-4, th))) / 2e-4;
      CHECK(std::abs(radial_derivative(h, r, th) - fd_r) < 1e-6);
      // J = lambda * Lambda exactly.
      const double lam = std::abs(hz) - std::abs(hzb), big = std::abs(hz) + std::abs(hzb);
      CHECK(std::abs(jacobian(h, z) - lam * big) <= 1e-12 * big * big);
    }
  }
}

TEST_CASE("identity residuals on convex-curve maps") {
  Rng rng(23);
  for (auto [a1, a2] : {std::pair{0.3, 0.1}, std::pair{-0.4, 0.2}, std::pair{0.0, 0.0}}) {
    auto h = ellipse_map(a1, a2);
    for (int i = 0; i < 100; ++i) {
      const cplx z = std::polar(0.9 * std::sqrt(rng.uniform()), rng.uniform(0, kTwoPi));
      auto [fd, series] = jacobian_z_check(h, z);
      CHECK(std::abs(fd - series) <= 1e-7 * std::max(1.0, std::abs(series)));
      auto s7 = log_jacobian_curvature(h, z);
      CHECK(std::abs(s7.lhs - s7.rhs) <= 1e-5 * std::max(1.0, std::abs(s7.rhs)));
      CHECK(s7.rhs >= 0.0);
      auto s6 = reciprocal_jacobian_curvature(h, z);
      CHECK(std::abs(s6.lhs - s6.rhs) <= 1e-5 * std::max(1.0, std::abs(s6.rhs)));
    }
  }
}

TEST_CASE("plane polynomial evaluator") {
  // x + i(x^2 - y^2 + c) = z/2 + i z^2/2 + ic + conj(z/2 - i z^2/2).
  const double c = 0.7;
  PlaneHarmonicPolynomial p({cplx(0, c), 0.5, cplx(0, 0.5)}, {0.0, 0.5, cplx(0, -0.5)});
  for (cplx z : {cplx(3.0, -2.0), cplx(-0.5, 5.0), cplx(10.0, 1.0)}) {
    const double x = z.real(), y = z.imag();
    CHECK(std::abs(p.eval(z) - cplx(x, x * x - y * y + c)) < 1e-12);
    CHECK(p.jacobian(z) == doctest::Approx(-2.0 * y).epsilon(1e-13));
  }
  PlaneHarmonicPolynomial q({0.0, 4.0}, {0.0, 0.0, 0.5});
  CHECK(q.jacobian({3.0, 4.0}) == doctest::Approx(16.0 - 25.0));
}
