#include "hmlab/rkc.hpp"

#include <algorithm>
#include <cmath>

#include "hmlab/parallel.hpp"

namespace hmlab {

Certificate certify(const DiskScenario& s) {
  if (!s.boundary || !s.domain) throw Error(ErrorCode::NonConvexCurve, "scenario has no convex boundary curve");
  const auto& b = *s.boundary;
  Certificate c;
  std::tie(c.k, c.big_k) = b.curve().curvature_range();
  if (!(c.k > 0.0)) throw Error(ErrorCode::NonConvexCurve, "curve is not strictly convex");
  c.m = b.min_speed();
  c.big_m = b.max_speed();
  if (!(c.m > 0.0)) throw Error(ErrorCode::DegenerateSpeed, "speed profile is not strictly positive");
  c.d = diameter(*s.domain);
  c.tolerance = s.tolerance;

  std::vector<double> ring(static_cast<std::size_t>(s.grid.angular));
  for (int j = 0; j < s.grid.angular; ++j)
    ring[static_cast<std::size_t>(j)] = jacobian(s.map, std::polar(c.ring_radius, s.grid.angle(j)));
  c.ring_min = *std::min_element(ring.begin(), ring.end());

  const auto values = sample_grid(s.grid, [&](cplx z) { return jacobian(s.map, z); });
  const std::size_t i = argmin_index(values);
  c.interior_min = values[i];
  c.interior_argmin = s.grid.point(i);
  c.evaluations = values.size() + ring.size();
  if (!std::isfinite(c.interior_min) || !std::isfinite(c.ring_min))
    throw Error(ErrorCode::NumericsError, "non-finite Jacobian");

  c.curvature_bound = c.k * c.m * c.m * c.m / (kTwoPi * c.big_k * c.big_m);
  c.diameter_bound = c.d * c.m / (8.0 * kPi * c.big_m);
  const bool curvature = c.curvature_bound >= c.diameter_bound;
  c.applied_bound = curvature ? "T17_rkc" : "T18_diameter";
  c.applied_value = curvature ? c.curvature_bound : c.diameter_bound;
  c.certified = c.ring_min > 0.0 && c.interior_min > 0.0 && c.interior_min >= c.ring_min - c.tolerance;
  return c;
}

double jacobian_grid_min(const BoundaryMap& map, const PolarGrid& grid) {
  const auto h = extend(map);
  const auto values = sample_grid(grid, [&](cplx z) { return jacobian(h, z); });
  return *std::min_element(values.begin(), values.end());
}

HomotopyTrace homotopy_trace(const CurvePtr& curve, const BoundaryMap& g, int intervals, PolarGrid grid) {
  if (intervals < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 intervals");
  if (!curve) throw Error(ErrorCode::InvalidArgument, "null curve");
  const double length = curve->length();
  if (std::abs(g.curve().length() - length) > 1e-12 * length)
    throw Error(ErrorCode::InvalidArgument, "boundary map lives on a different curve");
  const auto sg = g.schedule();
  if (std::abs(g.increment() - length) > 1e-9 * length)
    throw Error(ErrorCode::NonMonotoneInput, "boundary map is not a counterclockwise degree-one map");
  for (std::size_t i = 0; i + 1 < sg.size(); ++i)
    if (sg[i + 1] < sg[i]) throw Error(ErrorCode::NonMonotoneInput, "boundary schedule decreases");
  if (sg.front() + g.increment() < sg.back()) throw Error(ErrorCode::NonMonotoneInput, "boundary schedule decreases");

  const std::vector<double> ones(static_cast<std::size_t>(g.size()), 1.0);
  const auto start = boundary_from_speed(curve, ones, sg.front(), g.modes());
  const auto s0 = start.schedule();
  const auto v0 = start.speeds();
  const auto vg = g.speeds();

  HomotopyTrace t;
  for (int j = 0; j <= intervals; ++j) {
    const double lam = static_cast<double>(j) / intervals;
    std::vector<double> sched(s0.size()), speed(s0.size());
    // Both schedules are nondecreasing with the same increment, so the blend is too.
    for (std::size_t i = 0; i < s0.size(); ++i) {
      sched[i] = (1.0 - lam) * s0[i] + lam * sg[i];
      speed[i] = (1.0 - lam) * v0[i] + lam * vg[i];
    }
    const auto map = BoundaryMap::from_schedule(curve, std::move(sched), std::move(speed), length, g.modes());
    t.lambda.push_back(lam);
    t.m.push_back(jacobian_grid_min(map, grid));
    if (!std::isfinite(t.m.back())) throw Error(ErrorCode::NumericsError, "non-finite m(lambda)");
  }
  for (std::size_t j = 1; j < t.m.size(); ++j) t.max_jump = std::max(t.max_jump, std::abs(t.m[j] - t.m[j - 1]));
  t.notes.push_back("continuation starts from the constant-speed parametrization, not a conformal map");
  t.notes.push_back("schedules blended as convex combinations of unwrapped arc-length coordinates");
  return t;
}

}  // namespace hmlab
