#include "hmlab/gallery.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace hmlab {

namespace {

constexpr std::uint64_t kSelfMapStream = 0x5e1f5e1f5e1f5e1fULL;

/// Nonnegative weights with the given l1 budget, each with a random sign.
std::vector<double> random_amplitudes(Rng& rng, int n, double budget) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform();
    total += x;
  }
  const double used = budget * rng.uniform();
  for (auto& x : w) x *= (rng.uniform() < 0.5 ? -1.0 : 1.0) * used / total;
  return w;
}

}  // namespace

ConvexCurve random_convex_curve(Rng& rng, int samples) {
  const auto a = random_amplitudes(rng, 3, 0.75);
  std::vector<double> phase(3);
  for (auto& p : phase) p = rng.uniform(0.0, kTwoPi);
  const double scale = rng.uniform(0.5, 2.0);
  const double length = kTwoPi * scale;
  std::vector<double> kappa(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double u = kTwoPi * i / samples;
    double k = 1.0;
    for (int j = 0; j < 3; ++j) k += a[static_cast<std::size_t>(j)] * std::cos((j + 1) * u + phase[static_cast<std::size_t>(j)]);
    kappa[static_cast<std::size_t>(i)] = k / scale;
  }
  return curve_from_curvature(kappa, length);
}

std::vector<double> random_speed(Rng& rng, int samples) {
  const auto c = random_amplitudes(rng, 3, 0.6);
  std::vector<double> phase(3);
  for (auto& p : phase) p = rng.uniform(0.0, kTwoPi);
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    double s = 1.0;
    for (int j = 0; j < 3; ++j) s += c[static_cast<std::size_t>(j)] * std::cos((j + 1) * t + phase[static_cast<std::size_t>(j)]);
    v[static_cast<std::size_t>(i)] = s;
  }
  return v;
}

DiskScenario random_self_map(Rng& rng, bool conjugate, PolarGrid grid) {
  const auto a = random_amplitudes(rng, 3, 0.9);
  std::vector<double> phase(3);
  for (auto& p : phase) p = rng.uniform(0.0, kTwoPi);
  const int n = kDefaultBoundarySamples;
  std::vector<double> speed(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    double s = 1.0;
    for (int j = 0; j < 3; ++j) s += a[static_cast<std::size_t>(j)] * std::cos(2 * (j + 1) * t + phase[static_cast<std::size_t>(j)]);
    speed[static_cast<std::size_t>(i)] = s;
  }
  static const auto circle = std::make_shared<const ConvexCurve>(circle_curve(1.0));
  auto s = scenario_from_boundary("self_map", boundary_from_speed(circle, speed), grid);
  if (conjugate) s.map = s.map.conjugated();
  s.unit_disk_target = true;
  return s;
}

std::vector<DiskScenario> self_map_gallery(int count, std::uint64_t seed, PolarGrid grid) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "gallery count must be >= 1");
  Rng rng(seed ^ kSelfMapStream);
  std::vector<DiskScenario> out;
  for (int i = 0; i < count; ++i) {
    auto s = random_self_map(rng, i % 5 == 4, grid);
    s.name = "self_map_" + std::to_string(i);
    s.seed = seed + static_cast<std::uint64_t>(i);
    out.push_back(std::move(s));
  }
  return out;
}

Gallery make_gallery(int count, std::uint64_t seed, PolarGrid grid) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "gallery count must be >= 1");
  Rng rng(seed);
  Gallery g;
  for (int i = 0; i < count; ++i) {
    auto curve = std::make_shared<const ConvexCurve>(random_convex_curve(rng));
    const auto speed = random_speed(rng);
    const double offset = rng.uniform(0.0, curve->length());
    auto s = scenario_from_boundary("curve_" + std::to_string(i), boundary_from_speed(curve, speed, offset), grid);
    s.seed = seed + static_cast<std::uint64_t>(i);
    g.curves.push_back(std::move(s));
  }
  g.self_maps = self_map_gallery(count, seed, grid);
  return g;
}

}  // namespace hmlab
