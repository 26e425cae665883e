#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hmlab/curves.hpp"

namespace hmlab {

inline constexpr int kDefaultBoundarySamples = 2048;
inline constexpr int kDefaultModes = 256;

/// Degree-one map t -> z(s(t)) of the circle onto a convex curve, sampled on
/// t_i = 2 pi i / K. The arc schedule s is stored unwrapped: s(t + 2 pi) =
/// s(t) + increment, where increment is L for a counterclockwise traversal.
class BoundaryMap {
 public:
  /// Unchecked constructor; speeds are the |f'(t_i)| samples. When empty they
  /// are replaced by forward-difference slopes of the schedule.
  static BoundaryMap from_schedule(CurvePtr curve, std::vector<double> schedule,
                                   std::vector<double> speeds = {}, double increment = 0.0,
                                   int modes = kDefaultModes);

  const ConvexCurve& curve() const { return *curve_; }
  const CurvePtr& curve_ptr() const { return curve_; }
  int size() const { return static_cast<int>(schedule_.size()); }
  double step() const { return kTwoPi / static_cast<double>(schedule_.size()); }
  double increment() const { return increment_; }

  std::span<const double> schedule() const { return schedule_; }
  std::span<const double> speeds() const { return speeds_; }
  std::span<const cplx> samples() const { return samples_; }

  double min_speed() const { return min_speed_; }
  double max_speed() const { return max_speed_; }

  int modes() const { return modes_; }
  /// c_k for |k| <= modes(), stored at index k + modes().
  std::span<const cplx> coefficients() const { return coeffs_; }
  cplx coefficient(int k) const;
  /// Sum of |c_k| over the resolved modes beyond the truncation.
  double tail_bound() const { return tail_; }

 private:
  CurvePtr curve_;
  std::vector<double> schedule_;
  std::vector<double> speeds_;
  std::vector<cplx> samples_;
  double increment_ = 0.0;
  double min_speed_ = 0.0;
  double max_speed_ = 0.0;
  int modes_ = 0;
  std::vector<cplx> coeffs_;
  double tail_ = 0.0;
};

/// s(t) = start_offset + L * int_0^t v / int_0^{2 pi} v, integrated spectrally.
/// The speed samples live on the uniform grid of [0, 2 pi).
BoundaryMap boundary_from_speed(CurvePtr curve, std::span<const double> speed,
                                double start_offset = 0.0, int modes = kDefaultModes);
BoundaryMap boundary_from_speed(CurvePtr curve, const std::function<double(double)>& speed,
                                int samples = kDefaultBoundarySamples, double start_offset = 0.0,
                                int modes = kDefaultModes);

/// Boundary map t -> param.z(t) onto its own (arc-length resampled) trace.
BoundaryMap boundary_from_parametric(const ParametricCurve& param, int samples = kDefaultBoundarySamples,
                                     int modes = kDefaultModes);

/// (1 - eps) * (s convolved with a triangular kernel of half-width eps) + eps * linear schedule.
BoundaryMap smooth_monotone(const BoundaryMap& map, double eps);

/// c_k = (1/K) sum_i f(t_i) exp(-i k t_i), |k| <= n, at index k + n.
std::vector<cplx> fourier_coefficients(std::span<const cplx> samples, int n);
std::vector<cplx> fourier_coefficients(const BoundaryMap& map, int n);

struct MonotonicityReport {
  bool monotone_degree_one;
  double worst_slope;
  double total_increase;
};
MonotonicityReport monotonicity_degree_check(const BoundaryMap& map);

}  // namespace hmlab
