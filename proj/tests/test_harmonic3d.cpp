#include "doctest.h"

#include <cmath>

#include "hmlab/harmonic3d.hpp"
#include "hmlab/random.hpp"

using namespace hmlab;

namespace {

Poly3 mono(int i, int j, int k, double c = 1.0) { return Poly3::monomial(i, j, k, c); }

Vec3 random_ball_point(Rng& rng, double radius) {
  for (;;) {
    Vec3 p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (p.norm() <= 1.0) return radius * p;
  }
}

// Wood map (x^3 - 3xz^2 + yz, y - 3xz, z).
PolyMap3 wood_map() {
  return {mono(3, 0, 0) + mono(1, 0, 2, -3.0) + mono(0, 1, 1), mono(0, 1, 0) + mono(1, 0, 1, -3.0), mono(0, 0, 1)};
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Poly3 p = mono(2, 1, 0) + mono(0, 0, 3, 2.0);
  const Vec3 x(0.3, -1.2, 0.7);
  CHECK(p(x) == doctest::Approx(0.09 * -1.2 + 2 * 0.343));
  CHECK(p.derivative(0)(x) == doctest::Approx(2 * 0.3 * -1.2));
  CHECK(p.derivative(2)(x) == doctest::Approx(6 * 0.49));
  CHECK((p * p)(x) == doctest::Approx(p(x) * p(x)));
  CHECK((p - p).max_abs() == 0.0);
  CHECK(p.laplacian()(x) == doctest::Approx(2 * -1.2 + 12 * 0.7));
}

TEST_CASE("harmonic basis") {
  auto b1 = harmonic_basis(1);
  CHECK(b1.size() == 3);
  auto b2 = harmonic_basis(2);
  CHECK(b2.size() == 3 + 5);
  // Degree-two elements: x^2 - z^2, xy, y^2 - z^2, xz, yz.
  const Vec3 p(0.4, -0.7, 1.3);
  CHECK(b2[3](p) == doctest::Approx(0.16 - 1.69));
  CHECK(b2[4](p) == doctest::Approx(0.4 * -0.7));
  CHECK(b2[5](p) == doctest::Approx(0.49 - 1.69));
  CHECK(b2[6](p) == doctest::Approx(0.4 * 1.3));
  CHECK(b2[7](p) == doctest::Approx(-0.7 * 1.3));
  for (int d = 1; d <= 6; ++d) {
    auto b = harmonic_basis(d);
    CHECK(b.size() == static_cast<std::size_t>((d + 1) * (d + 1) - 1));
    for (const auto& u : b) CHECK(u.poly().laplacian().max_abs() <= 1e-12 * u.poly().max_abs());
  }
  CHECK_THROWS_AS(harmonic_basis(7), Error);
  CHECK_THROWS_AS(HarmonicPoly3(mono(2, 0, 0)), Error);
}

TEST_CASE("gradient maps and Hessians") {
  const HarmonicPoly3 u(mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, 2, -2.0));
  const auto g = gradient_map(u);
  const Vec3 p(0.25, -0.5, 0.75);
  CHECK((g(p) - Vec3(2 * p.x(), 2 * p.y(), -4 * p.z())).norm() == 0.0);
  CHECK(hessian_det(u, p) == doctest::Approx(-16.0));

  const HarmonicPoly3 xy(mono(1, 1, 0));
  CHECK((gradient_map(xy)(p) - Vec3(p.y(), p.x(), 0)).norm() == 0.0);
  CHECK(hessian_det(xy, p) == 0.0);

  const HarmonicPoly3 cubic(mono(3, 0, 0) + mono(1, 0, 2, -3.0));
  CHECK((gradient_map(cubic)(p) - Vec3(3 * p.x() * p.x() - 3 * p.z() * p.z(), 0, -6 * p.x() * p.z())).norm() < 1e-15);
  CHECK(hessian_det(cubic, p) == 0.0);
}

TEST_CASE("Jacobians of the polynomial maps") {
  Rng rng(1);
  const auto wood = wood_map();
  const PolyMap3 ex4{mono(1, 0, 0), mono(0, 1, 0), mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, 0, -1.0) + mono(0, 0, 2, -2.0)};
  const PolyMap3 id{mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)};
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    CHECK(std::abs(jacobian3(wood, p).det - 3 * p.x() * p.x()) <= 1e-12 * std::max(1.0, 3 * p.x() * p.x()));
    CHECK(std::abs(jacobian3(ex4, p).det + 4 * p.z()) <= 1e-12);
  }
  CHECK(jacobian3(id, {0.1, 0.2, 0.3}).det == 1.0);
  CHECK(cr_residual(wood, {1, 1, 1}).symmetry > 0.5);
}

TEST_CASE("gradient maps satisfy the CR system and det = Hessian") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_harmonic(rng, 3);
    const auto g = gradient_map(u);
    for (int i = 0; i < 50; ++i) {
      const Vec3 p = random_ball_point(rng, 1.0);
      const auto cr = cr_residual(g, p);
      CHECK(cr.symmetry <= 1e-12);
      CHECK(cr.trace <= 1e-12);
      CHECK(std::abs(hessian_det(u, p) - jacobian3(g, p).det) <= 1e-12 * std::max(1.0, hessian_scale(u, p)));
      CHECK(std::abs(hessian_det_poly(u)(p) - hessian_det(u, p)) <= 1e-12 * std::max(1.0, hessian_scale(u, p)));
    }
  }
}

TEST_CASE("log Hessian is superharmonic") {
  const HarmonicPoly3 quad(mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, 2, -2.0));
  CHECK(std::abs(lgw_residual(quad, {0.1, 0.2, 0.3})) < 1e-12);
  const HarmonicPoly3 planar(mono(2, 0, 0) - mono(0, 2, 0));
  CHECK_THROWS_AS(lgw_residual(planar, {0.1, 0.2, 0.3}), Error);

  Rng rng(3);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_harmonic(rng, 3);
    for (int i = 0; i < 100; ++i) {
      const Vec3 p = random_ball_point(rng, 1.0);
      if (std::abs(hessian_det(u, p)) <= 0.1 * hessian_scale(u, p)) continue;
      const double fd = lgw_residual(u, p);
      const double exact = lgw_exact(u, p);
      CHECK(exact <= 1e-12);
      CHECK(fd <= 1e-6);
      CHECK(std::abs(fd - exact) <= 1e-4 * std::max(1.0, std::abs(exact)));
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("sphere quadrature and Poisson extension") {
  const auto g = sphere_grid(64, 128);
  double total = 0.0;
  for (double w : g.weights) total += w;
  CHECK(std::abs(total - 2.0 * kTwoPi) <= 1e-12);

  auto constant = BallBoundaryData::sample([](const Vec3&) { return Vec3(1.5, -2.0, 0.25); });
  CHECK((poisson_ball_extend(constant, {0.3, 0.1, -0.5}) - Vec3(1.5, -2.0, 0.25)).norm() < 1e-12);
  auto linear = BallBoundaryData::sample([](const Vec3& x) { return Vec3(x.x(), 0, 0); });
  CHECK((poisson_ball_extend(linear, {0.3, 0.1, -0.5}) - Vec3(0.3, 0, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(poisson_ball_extend(linear, {1.0, 0.0, 0.0}), Error);

  Rng rng(4);
  const auto u = random_harmonic(rng, 3);
  const auto v = random_harmonic(rng, 3);
  auto data = BallBoundaryData::sample([&](const Vec3& x) { return Vec3(u(x), v(x), u(x) - v(x)); });
  Vec3 mean = Vec3::Zero();
  for (std::size_t i = 0; i < data.values.size(); ++i) mean += data.grid.weights[i] * data.values[i];
  CHECK((poisson_ball_extend(data, Vec3::Zero()) - mean / (2.0 * kTwoPi)).norm() < 1e-14);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p = random_ball_point(rng, 0.8);
    CHECK((poisson_ball_extend(data, p) - Vec3(u(p), v(p), u(p) - v(p))).norm() < 1e-8);
  }
}

TEST_CASE("ellipsoid distance") {
  const Ellipsoid e(Vec3(2, 2, 4));
  CHECK(e.distance(Vec3::Zero()) == doctest::Approx(2.0));
  CHECK(e.distance(Vec3(0, 0, 3)) == doctest::Approx(1.0));
  CHECK(e.distance(Vec3(0, 0, 5)) == doctest::Approx(1.0));
  const Ellipsoid tri(Vec3(3, 2, 1), Vec3(0.5, -0.2, 0.1));
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    const Vec3 p = tri.center + Vec3(rng.uniform(-4, 4), rng.uniform(-3, 3), rng.uniform(-2, 2));
    Vec3 c;
    const double d = tri.distance(p, &c);
    // Closest point on the surface, residual along the normal.
    const Vec3 q = (c - tri.center).cwiseQuotient(tri.semi_axes);
    CHECK(std::abs(q.squaredNorm() - 1.0) < 1e-10);
    CHECK(std::abs((p - c).norm() - d) < 1e-12);
    // Dense parametric sampling never beats it.
    double best = 1e300;
    for (int a = 0; a < 400; ++a)
      for (int b = 0; b < 800; ++b) {
        const double th = kPi * (a + 0.5) / 400, ph = kTwoPi * b / 800;
        const Vec3 s = tri.center + Vec3(3 * std::sin(th) * std::cos(ph), 2 * std::sin(th) * std::sin(ph), std::cos(th));
        best = std::min(best, (s - p).norm());
      }
    CHECK(d <= best + 1e-12);
    CHECK(best - d < 1e-3);
  }
}

TEST_CASE("Harnack distance margin in the ball") {
  const PolyMap3 id{mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)};
  BallGrid grid{8, 8, 16, 0.999};
  auto m = harnack_distance_margin([&](const Vec3& x) { return id(x); }, grid, Ellipsoid(Vec3(1, 1, 1)));
  CHECK(m.inradius == doctest::Approx(1.0));
  // (1 - r) - (1 - r)/4 is smallest at the outer shell.
  CHECK(m.margin == doctest::Approx(0.75 * 0.001).epsilon(1e-9));
  const HarmonicPoly3 u(mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, 2, -2.0));
  const auto g = gradient_map(u);
  auto mg = harnack_distance_margin([&](const Vec3& x) { return g(x); }, grid, Ellipsoid(Vec3(2, 2, 4)));
  CHECK(mg.inradius == doctest::Approx(2.0));
  CHECK(mg.margin >= 0.0);
}
