#include "doctest.h"

#include <cmath>
#include <memory>

#include "hmlab/rkc.hpp"

using namespace hmlab;

namespace {

const PolarGrid kGrid{16, 64, 0.99};

CurvePtr ellipse() { return std::make_shared<const ConvexCurve>(ellipse_curve(2.0, 1.0)); }
CurvePtr circle() { return std::make_shared<const ConvexCurve>(circle_curve(1.0)); }

DiskScenario on(const CurvePtr& c, const std::function<double(double)>& v, double offset = 0.0) {
  return scenario_from_boundary("rkc", boundary_from_speed(c, v, kDefaultBoundarySamples, offset), kGrid);
}

}  // namespace

TEST_CASE("circle with constant speed is certified") {
  const auto c = certify(on(circle(), [](double) { return 1.0; }));
  CHECK(c.certified);
  CHECK(c.interior_min == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.ring_min == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.curvature_bound == doctest::Approx(1.0 / kTwoPi).epsilon(1e-8));
  CHECK(c.diameter_bound == doctest::Approx(2.0 / (8.0 * kPi)).epsilon(1e-8));
  CHECK(c.applied_bound == "T17_rkc");
}

TEST_CASE("ellipse certificate respects both bounds") {
  const auto c = certify(on(ellipse(), [](double) { return 1.0; }));
  CHECK(c.certified);
  CHECK(c.k == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(c.big_k == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(c.interior_min >= std::max(c.curvature_bound, c.diameter_bound) - c.tolerance);
}

TEST_CASE("near-degenerate speed keeps the certificate with a bound of order m^3") {
  const double eps = 1e-3;
  const auto c = certify(on(circle(), [eps](double t) { return 1.0 + (1.0 - eps) * std::cos(t); }));
  CHECK(c.certified);
  CHECK(c.m == doctest::Approx(eps).epsilon(1e-3));
  CHECK(c.curvature_bound == doctest::Approx(c.m * c.m * c.m / (kTwoPi * c.big_m)).epsilon(1e-9));
  CHECK(c.curvature_bound < 1e-9);
}

TEST_CASE("certificate is invariant under the start point") {
  // property: h(e^{i a} z) is the map with parameter shifted by a; shifts by a
  // grid angle permute the sweep
  const int shift = kDefaultBoundarySamples / kGrid.angular;
  const double alpha = kTwoPi * shift / kDefaultBoundarySamples;
  for (int trial = 0; trial < 4; ++trial) {
    const double a = 0.15 * (trial + 1), ph = 0.9 * trial;
    auto v = [=](double t) { return 1.0 + a * std::cos(t + ph); };
    const auto s1 = on(ellipse(), v);
    const double offset = s1.boundary->schedule()[static_cast<std::size_t>(shift * (trial + 1))];
    const auto s2 = on(ellipse(), [&](double t) { return v(t + alpha * (trial + 1)); }, offset);
    const auto c1 = certify(s1);
    const auto c2 = certify(s2);
    CHECK(c1.certified == c2.certified);
    CHECK(c1.interior_min == doctest::Approx(c2.interior_min).epsilon(1e-9));
    CHECK(c1.ring_min == doctest::Approx(c2.ring_min).epsilon(1e-9));
  }
}

TEST_CASE("certificate preconditions") {
  auto bare = identity_scenario(kGrid);
  bare.boundary.reset();
  CHECK_THROWS_AS(certify(bare), Error);
  try {
    certify(bare);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvexCurve);
  }
  auto s = on(circle(), [](double) { return 1.0; });
  std::vector<double> sched(s.boundary->schedule().begin(), s.boundary->schedule().end());
  std::vector<double> speeds(sched.size(), 1.0);
  speeds[3] = 0.0;
  s.boundary = BoundaryMap::from_schedule(s.boundary->curve_ptr(), sched, speeds, s.boundary->increment());
  try {
    certify(s);
    FAIL("expected DegenerateSpeed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSpeed);
  }
}

TEST_CASE("homotopy from constant speed") {
  const auto c = ellipse();
  const auto g = boundary_from_speed(c, [](double t) { return 1.0 + 0.5 * std::cos(t); });
  const auto t = homotopy_trace(c, g, 20, kGrid);
  REQUIRE(t.lambda.size() == 21);
  CHECK(t.lambda.front() == 0.0);
  CHECK(t.lambda.back() == 1.0);
  double top = 0.0;
  for (double m : t.m) {
    CHECK(m > 0.0);
    top = std::max(top, m);
  }
  CHECK(t.max_jump <= 0.5 * top);
  CHECK(t.m.back() == jacobian_grid_min(g, kGrid));
  const std::vector<double> ones(static_cast<std::size_t>(g.size()), 1.0);
  CHECK(t.m.front() == jacobian_grid_min(boundary_from_speed(c, ones, g.schedule()[0]), kGrid));
  CHECK_FALSE(t.notes.empty());
}

TEST_CASE("homotopy of a constant family is flat") {
  const auto c = ellipse();
  const auto g = boundary_from_speed(c, [](double) { return 1.0; });
  const auto t = homotopy_trace(c, g, 4, kGrid);
  for (double m : t.m) CHECK(m == doctest::Approx(t.m[0]).epsilon(1e-12));

  const auto rot = boundary_from_speed(circle(), [](double) { return 1.0; }, kDefaultBoundarySamples, 0.8);
  for (double m : homotopy_trace(circle(), rot, 3, kGrid).m) CHECK(m == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("homotopy rejects non-monotone maps") {
  const auto c = circle();
  const auto g = boundary_from_speed(c, [](double) { return 1.0; });
  std::vector<double> sched(g.schedule().begin(), g.schedule().end());
  sched[10] = sched[12] + 0.1;
  const auto bad = BoundaryMap::from_schedule(c, sched, {}, g.increment());
  CHECK_THROWS_AS(homotopy_trace(c, bad, 4, kGrid), Error);
  CHECK_THROWS_AS(homotopy_trace(c, g, 1, kGrid), Error);
}
