#include "doctest.h"

#include <Eigen/QR>
#include <cmath>

#include "hmlab/diffops.hpp"
#include "hmlab/random.hpp"

using namespace hmlab;

namespace {

VecX v3(double a, double b, double c) { return (VecX(3) << a, b, c).finished(); }
VecX v2(double a, double b) { return (VecX(2) << a, b).finished(); }

MatX random_rotation(Rng& rng, int n) {
  MatX a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<MatX> qr(a);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("finite-difference Jacobians") {
  VectorField id = [](const VecX& x) { return x; };
  CHECK((fd_jacobian(id, v3(0.1, 0.2, 0.3)) - MatX::Identity(3, 3)).norm() < 1e-12);

  VectorField f3 = [](const VecX& x) { return radial_map(3.0, x); };
  for (double r : {0.5, 1.0, 1.7}) {
    const MatX m = fd_jacobian(f3, v3(r, 0, 0));
    MatX expect = MatX::Zero(3, 3);
    expect.diagonal() << 3 * r * r, r * r, r * r;
    CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-7);
  }

  VectorField wood = [](const VecX& p) {
    const double x = p[0], y = p[1], z = p[2];
    return v3(x * x * x - 3 * x * z * z + y * z, y - 3 * x * z, z);
  };
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const VecX p = v3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(std::abs(fd_jacobian(wood, p).determinant() - 3 * p[0] * p[0]) < 1e-8);
  }

  VectorField bad = [](const VecX& x) -> VecX {
    if (x[0] > 0.5) throw Error(ErrorCode::OutsideBall, "outside");
    return x;
  };
  try {
    fd_jacobian(bad, v2(0.5, 0.0));
    FAIL("expected EvaluationOutOfDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvaluationOutOfDomain);
  }
}

TEST_CASE("singular values and distortion") {
  auto [big, small] = singular_extremes(MatX::Identity(3, 3));
  CHECK(big == doctest::Approx(1.0));
  CHECK(small == doctest::Approx(1.0));
  MatX d = MatX::Zero(3, 3);
  d.diagonal() << 3, 1, 1;
  auto [b2, s2] = singular_extremes(d);
  CHECK(b2 == doctest::Approx(3.0));
  CHECK(s2 == doctest::Approx(1.0));

  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    MatX diag = MatX::Zero(3, 3);
    diag.diagonal() << rng.uniform(0.2, 5), rng.uniform(0.2, 5), rng.uniform(0.2, 5);
    const MatX m = random_rotation(rng, 3) * diag * random_rotation(rng, 3);
    auto [b, s] = singular_extremes(m);
    CHECK(b == doctest::Approx(diag.diagonal().maxCoeff()).epsilon(1e-12));
    CHECK(s == doctest::Approx(diag.diagonal().minCoeff()).epsilon(1e-10));
    const auto k = distortion(m);
    CHECK(k.outer >= 1.0 - 1e-12);
    CHECK(k.inner >= 1.0 - 1e-12);
    const auto kinv = distortion(m.inverse());
    CHECK(std::abs(k.outer - kinv.inner) <= 1e-10 * k.outer);
    const auto n = derivative_norms(m);
    CHECK(std::abs(n.det) <= std::pow(n.max_stretch, 3) * (1 + 1e-12));
    CHECK(std::abs(n.det) >= std::pow(n.min_stretch, 3) * (1 - 1e-12));
  }
  const auto id = distortion(MatX::Identity(3, 3));
  CHECK(id.outer == doctest::Approx(1.0));
  CHECK(id.inner == doctest::Approx(1.0));
  CHECK_THROWS_AS(distortion(MatX::Zero(3, 3)), Error);
}

TEST_CASE("radial maps") {
  const VecX x = v3(0.3, -0.4, 1.2);
  CHECK((radial_map(1.0, x) - x).norm() == 0.0);
  CHECK_THROWS_AS(radial_map(0.5, VecX::Zero(3)), Error);

  VectorField f3 = [](const VecX& p) { return radial_map(3.0, p); };
  VectorField fh = [](const VecX& p) { return radial_map(0.5, p); };
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const VecX p = v3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const auto k3 = distortion(fd_jacobian(f3, p, 1e-3));
    CHECK(std::abs(k3.inner - 3.0) < 1e-8);
    CHECK(std::abs(k3.outer - 9.0) < 1e-8);
    const auto kh = distortion(fd_jacobian(fh, p, 1e-4));
    CHECK(std::abs(kh.outer - 2.0) < 1e-6);
  }

  const VecX u = v3(1, 0, 0);
  CHECK(radial_pair_margin(3.0, u, 0.5 * u) >= 0.0);
  CHECK(radial_remainder(3.0, u, 0.5 * u) == doctest::Approx((1 - 0.25) * (1 - 0.0625)));
  for (double a : {1.0, 2.0, 3.0})
    for (int i = 0; i < 10000; ++i) {
      const VecX p = v3(rng.normal(), rng.normal(), rng.normal());
      const VecX q = v3(rng.normal(), rng.normal(), rng.normal());
      CHECK(radial_pair_margin(a, p, q) >= -1e-12);
      const bool ordered = q.norm() <= p.norm();
      CHECK(radial_remainder(a, ordered ? p : q, ordered ? q : p) >= -1e-12 * std::pow(std::max(p.norm(), q.norm()), 2 * a));
    }
}

TEST_CASE("mean-value tests and Laplacians") {
  ScalarField sq = [](const VecX& x) { return x.squaredNorm(); };
  auto sub = meanvalue_test(sq, v2(0.2, 0.1), {0.1, 0.2, 0.5}, MeanValueSense::Sub);
  CHECK(sub.margin == doctest::Approx(0.01));
  auto sub3 = meanvalue_test(sq, v3(0.2, 0.1, 0), {0.3}, MeanValueSense::Sub);
  CHECK(sub3.margin == doctest::Approx(0.09));
  auto super = meanvalue_test(sq, v2(0.2, 0.1), {0.1}, MeanValueSense::Super);
  CHECK(super.margin < 0.0);
  ScalarField harmonic = [](const VecX& x) { return x[0] * x[0] - x[1] * x[1]; };
  CHECK(std::abs(meanvalue_test(harmonic, v2(0.3, 0.4), {0.2}, MeanValueSense::Sub).margin) < 1e-14);
  ScalarField abs_comp = [](const VecX& x) { return std::abs(x[0] * x[1]); };
  CHECK(meanvalue_test(abs_comp, v2(0.3, -0.4), {0.1, 0.5, 1.0}, MeanValueSense::Sub).margin >= -1e-14);
  ScalarField logr = [](const VecX& x) {
    if (x.norm() == 0.0) throw Error(ErrorCode::OutOfDomain, "log 0");
    return std::log(x.norm());
  };
  CHECK_THROWS_AS(meanvalue_test(logr, v2(0.0, 0.0), {0.1}, MeanValueSense::Sub), Error);
  CHECK(fd_laplacian(sq, v3(0.3, 0.2, 0.1)) == doctest::Approx(6.0));
  CHECK(fd_laplacian(sq, v2(0.3, 0.2)) == doctest::Approx(4.0));
}

TEST_CASE("ball averages of the Jacobian") {
  ScalarField one = [](const VecX&) { return 1.0; };
  CHECK(astala_gehring_a(one, v2(0, 0), 1.0) == doctest::Approx(1.0));
  CHECK(mean_jacobian(one, v3(0, 0, 0), 1.0).value == doctest::Approx(1.0));
  // f = c z: J = |c|^2.
  const double c = 1.7;
  ScalarField conf = [&](const VecX&) { return c * c; };
  CHECK(astala_gehring_a(conf, v2(0.1, 0.2), 0.5) == doctest::Approx(c));
  CHECK(mean_jacobian(conf, v2(0.1, 0.2), 0.5).value == doctest::Approx(c));
  // J = 16 - |z|^2 averaged over B(0, 1/2): 16 - 1/8.
  ScalarField jex = [](const VecX& x) { return 16.0 - x.squaredNorm(); };
  CHECK(mean_jacobian(jex, v2(0, 0), 1.0).mean == doctest::Approx(16.0 - 0.125).epsilon(1e-12));
  ScalarField signed_j = [](const VecX& x) { return x[0] + 0.1; };
  auto mj = mean_jacobian(signed_j, v2(0, 0), 1.0);
  CHECK(mj.negative_cells > 0);
  CHECK(mj.mean == doctest::Approx(0.1));
  CHECK_THROWS_AS(astala_gehring_a(signed_j, v2(0, 0), 1.0), Error);
  ScalarField neg = [](const VecX&) { return -1.0; };
  CHECK_THROWS_AS(mean_jacobian(neg, v2(0, 0), 1.0), Error);
}
