#include "hmlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hmlab {

namespace {

double wrap_angle(double a) {
  while (a > kPi) a -= kTwoPi;
  while (a <= -kPi) a += kTwoPi;
  return a;
}

}  // namespace

ConvexCurve::ConvexCurve(double length, std::vector<double> curvature,
                         std::vector<double> tangent_angle, std::vector<cplx> points)
    : length_(length),
      curvature_(std::move(curvature)),
      tangent_angle_(std::move(tangent_angle)),
      points_(std::move(points)) {
  if (!(length_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "curve length must be positive");
  if (points_.size() < 8 || curvature_.size() != points_.size() ||
      tangent_angle_.size() != points_.size())
    throw Error(ErrorCode::InsufficientSamples, "curve needs >= 8 consistent samples");
  for (double k : curvature_)
    if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveCurvature, "curvature sample <= 0");
  interp_ = PeriodicInterpolant(points_, length_);
}

std::pair<double, double> ConvexCurve::curvature_range() const {
  const auto [lo, hi] = std::minmax_element(curvature_.begin(), curvature_.end());
  return {*lo, *hi};
}

double ConvexCurve::total_turning() const {
  return spacing() * std::accumulate(curvature_.begin(), curvature_.end(), 0.0);
}

double ConvexCurve::closure_gap() const {
  cplx sum{};
  for (double phi : tangent_angle_) sum += std::polar(1.0, phi);
  return std::abs(sum) * spacing();
}

double ConvexCurve::unit_speed_defect() const {
  const double h = 1e-3 * spacing();
  double worst = 0.0;
  for (int i = 0; i < size(); ++i) {
    const double s = arc(i);
    const double speed = std::abs(interp_(s + h) - interp_(s - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(speed - 1.0));
  }
  return worst;
}

ConvexCurve ConvexCurve::transformed(cplx rotation_scale, cplx shift) const {
  const double scale = std::abs(rotation_scale);
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "degenerate similarity");
  const double rot = std::arg(rotation_scale);
  std::vector<double> kappa(curvature_.size()), phi(tangent_angle_.size());
  std::vector<cplx> pts(points_.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    kappa[i] = curvature_[i] / scale;
    phi[i] = tangent_angle_[i] + rot;
    pts[i] = rotation_scale * points_[i] + shift;
  }
  return ConvexCurve(length_ * scale, std::move(kappa), std::move(phi), std::move(pts));
}

ConvexDomain2::ConvexDomain2(CurvePtr curve, cplx p0) : boundary(std::move(curve)), interior_point(p0) {
  if (!boundary) throw Error(ErrorCode::InvalidArgument, "null boundary curve");
  if (winding_number(*boundary, p0) != 1)
    throw Error(ErrorCode::PointOutside, "reference point is not inside the curve");
}

ConvexDomain2::ConvexDomain2(CurvePtr curve)
    : ConvexDomain2(curve, [&] {
        if (!curve) throw Error(ErrorCode::InvalidArgument, "null boundary curve");
        const auto pts = curve->points();
        return std::accumulate(pts.begin(), pts.end(), cplx{}) / static_cast<double>(pts.size());
      }()) {}

ResampledCurve curve_from_parametric(const ParametricCurve& param, int samples, bool recenter) {
  if (samples < 8) throw Error(ErrorCode::InsufficientSamples, "need >= 8 curve samples");
  const auto m = static_cast<std::size_t>(samples);
  const double dt = kTwoPi / static_cast<double>(m);

  std::vector<cplx> speed(m);
  for (std::size_t j = 0; j < m; ++j) speed[j] = std::abs(param.dz(dt * static_cast<double>(j)));
  const SecularSeries arc(speed, kTwoPi);
  const double length = arc.slope().real() * kTwoPi;
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "curve has zero length");

  std::vector<double> arc_grid(m);
  for (std::size_t j = 0; j < m; ++j) arc_grid[j] = arc.grid_values()[j].real();

  // Invert s(t) at uniform arc length: bracket on the grid, then Newton.
  std::vector<double> param_at(m);
  std::size_t j = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double target = length * static_cast<double>(i) / static_cast<double>(m);
    while (j + 1 < m && arc_grid[j + 1] <= target) ++j;
    const double s0 = arc_grid[j];
    const double s1 = j + 1 < m ? arc_grid[j + 1] : length;
    double t = dt * (static_cast<double>(j) + (s1 > s0 ? (target - s0) / (s1 - s0) : 0.0));
    for (int it = 0; it < 12; ++it) {
      const double residual = arc.value(t).real() - target;
      const double step = residual / std::abs(param.dz(t));
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    param_at[i] = t;
  }

  std::vector<cplx> pts(m);
  std::vector<double> phi(m), kappa(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = param_at[i];
    const cplx d1 = param.dz(t);
    const cplx d2 = param.ddz(t);
    pts[i] = param.z(t);
    const double speed_i = std::abs(d1);
    kappa[i] = (std::conj(d1) * d2).imag() / (speed_i * speed_i * speed_i);
    const double angle = std::arg(d1);
    phi[i] = i == 0 ? angle : phi[i - 1] + wrap_angle(angle - phi[i - 1]);
    if (!(kappa[i] > 0.0))
      throw Error(ErrorCode::NonPositiveCurvature, "parametric curve is not strictly convex");
  }
  if (recenter) {
    const cplx centroid = std::accumulate(pts.begin(), pts.end(), cplx{}) / static_cast<double>(m);
    for (auto& p : pts) p -= centroid;
  }
  return {ConvexCurve(length, std::move(kappa), std::move(phi), std::move(pts)), std::move(arc_grid)};
}

ConvexCurve curve_from_curvature(std::span<const double> curvature, double length) {
  const std::size_t m = curvature.size();
  if (m < 8) throw Error(ErrorCode::InsufficientSamples, "need >= 8 curvature samples");
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "length must be positive");
  for (double k : curvature)
    if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveCurvature, "curvature sample <= 0");

  const double ds = length / static_cast<double>(m);
  const double turning = ds * std::accumulate(curvature.begin(), curvature.end(), 0.0);
  if (std::abs(turning - kTwoPi) > 0.05 * kTwoPi)
    throw Error(ErrorCode::TurningNumberMismatch,
                "integral of curvature is " + std::to_string(turning) + ", expected 2 pi");

  std::vector<cplx> kappa(m);
  for (std::size_t i = 0; i < m; ++i) kappa[i] = curvature[i] * (kTwoPi / turning);
  const SecularSeries angle(kappa, length);

  // Tangent field with its mean removed; the mean is the closure defect.
  std::vector<cplx> tangent(m);
  cplx mean{};
  for (std::size_t i = 0; i < m; ++i) {
    tangent[i] = std::polar(1.0, 0.5 * kPi + angle.grid_values()[i].real());
    mean += tangent[i];
  }
  mean /= static_cast<double>(m);
  for (auto& w : tangent) w -= mean;

  const SecularSeries position(tangent, length);
  std::vector<cplx> z(position.grid_values());
  const cplx drift = position.slope();
  for (std::size_t i = 0; i < m; ++i) z[i] -= drift * (ds * static_cast<double>(i));

  const PeriodicInterpolant z_of_s(z, length);
  const PeriodicInterpolant w_of_s(tangent, length);
  const double scale = length / kTwoPi;
  ParametricCurve param{
      [=](double t) { return z_of_s(t * scale); },
      [=](double t) { return w_of_s(t * scale) * scale; },
      [=](double t) { return w_of_s.evaluate(t * scale, 1) * (scale * scale); },
  };
  return curve_from_parametric(param, static_cast<int>(m), true).curve;
}

ConvexCurve ellipse_curve(double a, double b, int samples) {
  if (!(b > 0.0) || a < b) throw Error(ErrorCode::InvalidAxes, "ellipse needs a >= b > 0");
  ParametricCurve param{
      [=](double t) { return cplx(a * std::cos(t), b * std::sin(t)); },
      [=](double t) { return cplx(-a * std::sin(t), b * std::cos(t)); },
      [=](double t) { return cplx(-a * std::cos(t), -b * std::sin(t)); },
  };
  return curve_from_parametric(param, samples, false).curve;
}

ConvexCurve circle_curve(double radius, int samples) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidAxes, "circle radius must be positive");
  return ellipse_curve(radius, radius, samples);
}

int winding_number(const ConvexCurve& curve, cplx p) {
  const auto pts = curve.points();
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx a = pts[i] - p;
    const cplx b = pts[(i + 1) % pts.size()] - p;
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) return 0;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

BoundaryFoot nearest_boundary_point(const ConvexDomain2& dom, cplx x) {
  const ConvexCurve& c = *dom.boundary;
  const auto pts = c.points();
  const int m = c.size();
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const double d2 = std::norm(pts[static_cast<std::size_t>(i)] - x);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  const double h = c.spacing();
  const double dm = std::norm(pts[static_cast<std::size_t>((best + m - 1) % m)] - x);
  const double dp = std::norm(pts[static_cast<std::size_t>((best + 1) % m)] - x);
  double s = c.arc(best);
  const double curv = dm - 2.0 * best_d2 + dp;
  if (curv > 0.0) s += std::clamp(0.5 * h * (dm - dp) / curv, -h, h);

  // Newton on the stationarity condition Re(conj(z - x) z') = 0.
  double d2 = std::norm(c.point_at(s) - x);
  if (d2 > best_d2) {
    s = c.arc(best);
    d2 = best_d2;
  }
  for (int it = 0; it < 8; ++it) {
    const auto [zs, d1, dd] = c.jet(s);
    const cplx diff = zs - x;
    const double g = dot(diff, d1);
    const double gp = std::norm(d1) + dot(diff, dd);
    if (!(gp > 0.0)) break;
    const double step = std::clamp(g / gp, -h, h);
    const double trial = s - step;
    const double trial_d2 = std::norm(c.point_at(trial) - x);
    if (!(trial_d2 <= d2)) break;
    s = trial;
    d2 = trial_d2;
    if (std::abs(step) < 1e-14 * c.length()) break;
  }
  s = std::fmod(s, c.length());
  if (s < 0.0) s += c.length();
  return {std::sqrt(d2), s, c.point_at(s)};
}

double dist_to_boundary(const ConvexDomain2& dom, cplx x) { return nearest_boundary_point(dom, x).distance; }

double inradius(const ConvexDomain2& dom, cplx c) {
  if (winding_number(*dom.boundary, c) != 1)
    throw Error(ErrorCode::PointOutside, "inradius centre lies outside the domain");
  return dist_to_boundary(dom, c);
}

SupportLine support_normal(const ConvexDomain2& dom, cplx a) {
  const ConvexCurve& c = *dom.boundary;
  const auto foot = nearest_boundary_point(dom, a);
  const double scale = std::max(1.0, c.length() / kPi);
  if (foot.distance > 1e-8 * scale)
    throw Error(ErrorCode::PointNotOnBoundary, "point is " + std::to_string(foot.distance) +
                                                   " away from the boundary");
  const cplx tangent = c.tangent_at(foot.arc);
  cplx normal = cplx(0.0, 1.0) * tangent / std::abs(tangent);
  if (dot(dom.interior_point - a, normal) < 0.0) normal = -normal;

  const double tol = -1e-9 * diameter(dom);
  bool supporting = true;
  for (const auto& w : c.points())
    if (dot(w - a, normal) < tol) {
      supporting = false;
      break;
    }
  if (!supporting) {
    // Angular midpoint of the adjacent edge normals (normal cone bisector).
    const auto pts = c.points();
    const int m = c.size();
    const int i = static_cast<int>(std::lround(foot.arc / c.spacing())) % m;
    const cplx prev = pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>((i + m - 1) % m)];
    const cplx next = pts[static_cast<std::size_t>((i + 1) % m)] - pts[static_cast<std::size_t>(i)];
    const cplx n1 = cplx(0.0, 1.0) * prev / std::abs(prev);
    const cplx n2 = cplx(0.0, 1.0) * next / std::abs(next);
    normal = (n1 + n2) / std::abs(n1 + n2);
  }
  return {a, normal};
}

double diameter(const ConvexDomain2& dom) {
  const auto pts = dom.boundary->points();
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, std::norm(pts[i] - pts[j]));
  return std::sqrt(best);
}

}  // namespace hmlab
