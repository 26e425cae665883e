#include "doctest.h"

#include <cmath>
#include <vector>

#include "hmlab/boundary.hpp"
#include "hmlab/random.hpp"

using namespace hmlab;

namespace {

CurvePtr unit_circle() { return std::make_shared<const ConvexCurve>(circle_curve(1.0)); }
CurvePtr ellipse21() { return std::make_shared<const ConvexCurve>(ellipse_curve(2.0, 1.0)); }

double max_gap(const BoundaryMap& a, const BoundaryMap& b) {
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.schedule()[i] - b.schedule()[i]));
  return worst;
}

}  // namespace

TEST_CASE("constant speed on the circle is the identity") {
  auto f = boundary_from_speed(unit_circle(), [](double) { return 1.0; });
  for (int i = 0; i < f.size(); i += 7) {
    const double t = f.step() * i;
    CHECK(std::abs(f.samples()[i] - std::polar(1.0, t)) < 1e-12);
  }
  CHECK(std::abs(f.coefficient(1) - 1.0) < 1e-12);
  for (int k = -f.modes(); k <= f.modes(); ++k)
    if (k != 1) CHECK(std::abs(f.coefficient(k)) <= 1e-12);
  CHECK(f.min_speed() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(monotonicity_degree_check(f).monotone_degree_one);
}

TEST_CASE("variable speed on the circle") {
  auto f = boundary_from_speed(unit_circle(), [](double t) { return 1.0 + 0.5 * std::cos(t); });
  double worst = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double t = f.step() * i;
    worst = std::max(worst, std::abs(f.schedule()[i] - (t + 0.5 * std::sin(t))));
  }
  CHECK(worst < 1e-12);
  CHECK(f.min_speed() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.max_speed() == doctest::Approx(1.5).epsilon(1e-12));
  for (int i = 0; i < f.size(); i += 13)
    CHECK(std::abs(f.samples()[i] - f.curve().point_at(f.schedule()[i])) < 1e-9);
}

TEST_CASE("start offset rotates the circle map") {
  const double alpha = 0.4;
  auto f = boundary_from_speed(unit_circle(), [](double) { return 1.0; }, 2048, alpha);
  CHECK(std::abs(f.coefficient(1) - std::polar(1.0, alpha)) < 1e-12);
}

TEST_CASE("constant speed on the ellipse") {
  auto f = boundary_from_speed(ellipse21(), [](double) { return 2.5; });
  const double expect = f.curve().length() / kTwoPi;
  CHECK(f.min_speed() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(f.max_speed() == doctest::Approx(expect).epsilon(1e-12));
  // Chord differences of the samples approach the same speed.
  const double h = f.step();
  const double chord = std::abs(f.samples()[1] - f.samples()[0]) / h;
  CHECK(chord == doctest::Approx(expect).epsilon(1e-4));
  CHECK_THROWS_AS(boundary_from_speed(ellipse21(), [](double t) { return std::cos(t); }), Error);
}

TEST_CASE("speed extraction recovers the normalized profile") {
  Rng rng(3);
  auto curve = ellipse21();
  for (int trial = 0; trial < 5; ++trial) {
    double c[3], d[3];
    for (int j = 0; j < 3; ++j) {
      c[j] = rng.uniform(-0.2, 0.2);
      d[j] = rng.uniform(0.0, kTwoPi);
    }
    auto v = [&](double t) {
      double s = 1.3;
      for (int j = 0; j < 3; ++j) s += c[j] * std::cos((j + 1) * t + d[j]);
      return s;
    };
    auto f = boundary_from_speed(curve, v);
    // Spectral derivative of the periodic part of the schedule.
    std::vector<cplx> p(f.size());
    const double rate = f.curve().length() / kTwoPi;
    for (int i = 0; i < f.size(); ++i) p[i] = f.schedule()[i] - rate * f.step() * i;
    PeriodicInterpolant pi(p, kTwoPi);
    const double scale = f.curve().length() / (1.3 * kTwoPi);
    for (int i = 0; i < f.size(); i += 5) {
      const double t = f.step() * i;
      CHECK(std::abs(rate + pi.evaluate(t, 1).real() - scale * v(t)) < 1e-8);
    }
  }
}

TEST_CASE("fourier coefficients") {
  const int k = 64;
  std::vector<cplx> a(k), b(k);
  for (int i = 0; i < k; ++i) {
    const double t = kTwoPi * i / k;
    a[i] = std::polar(1.0, t);
    b[i] = std::polar(1.0, t) + 0.3 * std::polar(1.0, -2.0 * t);
  }
  auto ca = fourier_coefficients(a, 8);
  CHECK(std::abs(ca[9] - 1.0) < 1e-14);
  auto cb = fourier_coefficients(b, 8);
  CHECK(std::abs(cb[9] - 1.0) < 1e-14);
  CHECK(std::abs(cb[6] - 0.3) < 1e-14);
  try {
    fourier_coefficients(a, 32);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }

  // Round trip for a smooth map with N = 256.
  auto f = boundary_from_speed(ellipse21(), [](double t) { return 1.0 + 0.3 * std::sin(2.0 * t); });
  double worst = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double t = f.step() * i;
    cplx sum{};
    for (int m = -256; m <= 256; ++m) sum += f.coefficient(m) * std::polar(1.0, m * t);
    worst = std::max(worst, std::abs(sum - f.samples()[i]));
  }
  CHECK(worst <= 1e-8);
  CHECK(f.tail_bound() <= 1e-8);

  // Real coordinates give Hermitian coefficient sequences.
  std::vector<cplx> re(f.size()), im(f.size());
  for (int i = 0; i < f.size(); ++i) {
    re[i] = f.samples()[i].real();
    im[i] = f.samples()[i].imag();
  }
  auto cr = fourier_coefficients(re, 64), ci = fourier_coefficients(im, 64);
  for (int m = 0; m <= 64; ++m) {
    CHECK(std::abs(cr[64 + m] - std::conj(cr[64 - m])) < 1e-14);
    CHECK(std::abs(ci[64 + m] - std::conj(ci[64 - m])) < 1e-14);
  }
}

TEST_CASE("smoothing monotone schedules") {
  auto curve = unit_circle();
  auto id = boundary_from_speed(curve, [](double) { return 1.0; });
  auto half = smooth_monotone(id, 0.5);
  CHECK(max_gap(id, half) < 1e-12);
  CHECK_THROWS_AS(smooth_monotone(id, 0.0), Error);
  CHECK_THROWS_AS(smooth_monotone(id, 1.0), Error);

  // Smooth schedule: deviation bounded by eps * (L + sup |s - Lt/2pi|).
  auto f = boundary_from_speed(curve, [](double t) { return 1.0 + 0.5 * std::cos(t); });
  double prev = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto g = smooth_monotone(f, eps);
    const double dev = max_gap(f, g);
    CHECK(dev <= eps * (kTwoPi + 0.5));
    CHECK(dev < prev);
    prev = dev;
  }

  // Step-like schedule: half the circle on [0, pi/100], the rest slowly.
  const int k = 2048;
  std::vector<double> s(k);
  const double t_jump = kPi / 100.0;
  for (int i = 0; i < k; ++i) {
    const double t = kTwoPi * i / k;
    s[i] = t < t_jump ? kPi * t / t_jump : kPi + kPi * (t - t_jump) / (kTwoPi - t_jump);
  }
  // Flatten a stretch to make it merely monotone.
  for (int i = 1200; i < 1300; ++i) s[i] = s[1200];
  auto step = BoundaryMap::from_schedule(curve, s);
  CHECK(monotonicity_degree_check(step).monotone_degree_one);
  CHECK(step.min_speed() == doctest::Approx(0.0).epsilon(1e-12));
  auto smooth = smooth_monotone(step, 1e-2);
  auto report = monotonicity_degree_check(smooth);
  CHECK(report.monotone_degree_one);
  CHECK(report.worst_slope > 0.0);
  CHECK(smooth.min_speed() > 0.0);
}

TEST_CASE("reversed schedule fails the degree check") {
  auto curve = unit_circle();
  const int k = 256;
  std::vector<double> s(k);
  for (int i = 0; i < k; ++i) s[i] = -kTwoPi * i / k;
  auto rev = BoundaryMap::from_schedule(curve, s, {}, -kTwoPi, 64);
  auto report = monotonicity_degree_check(rev);
  CHECK_FALSE(report.monotone_degree_one);
  CHECK(report.worst_slope < 0.0);
}
