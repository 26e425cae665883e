#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hmlab/core.hpp"
#include "hmlab/spectral.hpp"

namespace hmlab {

inline constexpr int kDefaultCurveSamples = 2048;

/// Closed strictly convex plane curve, counterclockwise, sampled uniformly in
/// arc length s_i = i L / M. Positions between samples come from the
/// trigonometric interpolant of z(s), which is L-periodic.
///
/// Conventions: the tangent at s = 0 has direction angle tangent_angle()[0],
/// and the arc-length centroid of a curve built here sits at the origin
/// unless it was moved with transformed().
class ConvexCurve {
 public:
  ConvexCurve(double length, std::vector<double> curvature, std::vector<double> tangent_angle,
              std::vector<cplx> points);

  double length() const { return length_; }
  int size() const { return static_cast<int>(points_.size()); }
  double spacing() const { return length_ / static_cast<double>(points_.size()); }

  std::span<const double> curvature() const { return curvature_; }
  std::span<const double> tangent_angle() const { return tangent_angle_; }
  std::span<const cplx> points() const { return points_; }
  double arc(int i) const { return spacing() * i; }

  /// Interpolated position, unit tangent and second derivative at arc length s (any real s).
  cplx point_at(double s) const { return interp_(s); }
  cplx tangent_at(double s) const { return interp_.evaluate(s, 1); }
  cplx second_derivative_at(double s) const { return interp_.evaluate(s, 2); }
  std::array<cplx, 3> jet(double s) const { return interp_.jet(s); }

  std::pair<double, double> curvature_range() const;
  /// Trapezoid value of the integral of curvature; 2 pi for a valid curve.
  double total_turning() const;
  /// |z(L) - z(0)| obtained by integrating the stored tangent angle.
  double closure_gap() const;
  /// Largest deviation of |z'(s_i)| from 1, by centered differences of the interpolant.
  double unit_speed_defect() const;

  /// Image under w -> rotation_scale * w + shift (a similarity, rotation_scale != 0).
  ConvexCurve transformed(cplx rotation_scale, cplx shift) const;

 private:
  double length_;
  std::vector<double> curvature_;
  std::vector<double> tangent_angle_;
  std::vector<cplx> points_;
  PeriodicInterpolant interp_;
};

using CurvePtr = std::shared_ptr<const ConvexCurve>;

/// Bounded convex domain enclosed by a curve, with a reference interior point.
struct ConvexDomain2 {
  CurvePtr boundary;
  cplx interior_point{};

  ConvexDomain2(CurvePtr curve, cplx p0);
  explicit ConvexDomain2(CurvePtr curve);
};

struct SupportLine {
  cplx contact;
  cplx inward_normal;
};

/// Closest boundary point of the domain to x, with its arc-length coordinate.
struct BoundaryFoot {
  double distance;
  double arc;
  cplx point;
};

/// Integrates phi = int kappa and z = int exp(i phi) from curvature samples on
/// [0, L). Curvature is rescaled to total turning 2 pi and the tangent mean is
/// subtracted for closure; the closed curve is then resampled by arc length.
ConvexCurve curve_from_curvature(std::span<const double> curvature, double length);

/// Unit-speed resampling of the ellipse (a cos t, b sin t), a >= b > 0.
ConvexCurve ellipse_curve(double a, double b, int samples = kDefaultCurveSamples);
ConvexCurve circle_curve(double radius, int samples = kDefaultCurveSamples);

/// Parametric closed curve t -> z(t), t in [0, 2 pi), counterclockwise and
/// strictly convex, resampled by arc length. Also returns the arc-length
/// coordinate s(t_j) of the parameter grid t_j = 2 pi j / samples.
struct ParametricCurve {
  std::function<cplx(double)> z;
  std::function<cplx(double)> dz;
  std::function<cplx(double)> ddz;
};
struct ResampledCurve {
  ConvexCurve curve;
  std::vector<double> arc_of_parameter;
};
ResampledCurve curve_from_parametric(const ParametricCurve& param, int samples = kDefaultCurveSamples,
                                     bool recenter = true);

/// Winding number of the curve about p.
int winding_number(const ConvexCurve& curve, cplx p);

BoundaryFoot nearest_boundary_point(const ConvexDomain2& dom, cplx x);
SupportLine support_normal(const ConvexDomain2& dom, cplx a);
double dist_to_boundary(const ConvexDomain2& dom, cplx x);
double inradius(const ConvexDomain2& dom, cplx c);
double diameter(const ConvexDomain2& dom);

}  // namespace hmlab
