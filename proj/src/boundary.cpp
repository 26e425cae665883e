#include "hmlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hmlab {

namespace {

std::vector<cplx> truncated_coefficients(std::span<const cplx> samples, int n, double* tail) {
  const std::size_t k_count = samples.size();
  if (k_count < static_cast<std::size_t>(2 * n + 2))
    throw Error(ErrorCode::InsufficientSamples,
                std::to_string(k_count) + " samples cannot resolve " + std::to_string(n) + " modes");
  const auto full = dft(samples);
  std::vector<cplx> out(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : k_count - static_cast<std::size_t>(-k);
    out[static_cast<std::size_t>(k + n)] = full[idx];
  }
  if (tail) {
    double sum = 0.0;
    for (std::size_t idx = 0; idx < k_count; ++idx)
      if (std::abs(signed_frequency(idx, k_count)) > n) sum += std::abs(full[idx]);
    *tail = sum;
  }
  return out;
}

}  // namespace

BoundaryMap BoundaryMap::from_schedule(CurvePtr curve, std::vector<double> schedule,
                                       std::vector<double> speeds, double increment, int modes) {
  if (!curve) throw Error(ErrorCode::InvalidArgument, "null curve");
  if (schedule.size() < 8) throw Error(ErrorCode::InsufficientSamples, "schedule needs >= 8 samples");
  BoundaryMap map;
  map.curve_ = std::move(curve);
  map.schedule_ = std::move(schedule);
  map.increment_ = increment == 0.0 ? map.curve_->length() : increment;
  const std::size_t k = map.schedule_.size();
  const double dt = kTwoPi / static_cast<double>(k);
  if (speeds.empty()) {
    speeds.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double next = i + 1 < k ? map.schedule_[i + 1] : map.schedule_[0] + map.increment_;
      speeds[i] = (next - map.schedule_[i]) / dt;
    }
  }
  if (speeds.size() != k) throw Error(ErrorCode::InvalidArgument, "speed/schedule size mismatch");
  map.speeds_ = std::move(speeds);
  const auto [lo, hi] = std::minmax_element(map.speeds_.begin(), map.speeds_.end());
  map.min_speed_ = *lo;
  map.max_speed_ = *hi;
  map.samples_.resize(k);
  for (std::size_t i = 0; i < k; ++i) map.samples_[i] = map.curve_->point_at(map.schedule_[i]);
  map.modes_ = modes;
  map.coeffs_ = truncated_coefficients(map.samples_, modes, &map.tail_);
  return map;
}

cplx BoundaryMap::coefficient(int k) const {
  if (std::abs(k) > modes_) return {};
  return coeffs_[static_cast<std::size_t>(k + modes_)];
}

BoundaryMap boundary_from_speed(CurvePtr curve, std::span<const double> speed, double start_offset,
                                int modes) {
  if (!curve) throw Error(ErrorCode::InvalidArgument, "null curve");
  for (double v : speed)
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveSpeed, "speed profile must be strictly positive");
  const std::size_t k = speed.size();
  const SecularSeries primitive(to_complex(speed), kTwoPi);
  const double total = primitive.slope().real() * kTwoPi;
  const double length = curve->length();
  std::vector<double> schedule(k), normalized(k);
  for (std::size_t i = 0; i < k; ++i) {
    schedule[i] = start_offset + length * primitive.grid_values()[i].real() / total;
    normalized[i] = length * speed[i] / total;
  }
  return BoundaryMap::from_schedule(std::move(curve), std::move(schedule), std::move(normalized), length,
                                    modes);
}

BoundaryMap boundary_from_speed(CurvePtr curve, const std::function<double(double)>& speed, int samples,
                                double start_offset, int modes) {
  if (samples < 8) throw Error(ErrorCode::InsufficientSamples, "need >= 8 speed samples");
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) v[static_cast<std::size_t>(i)] = speed(kTwoPi * i / samples);
  return boundary_from_speed(std::move(curve), v, start_offset, modes);
}

BoundaryMap boundary_from_parametric(const ParametricCurve& param, int samples, int modes) {
  auto resampled = curve_from_parametric(param, samples, false);
  std::vector<double> speeds(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) speeds[static_cast<std::size_t>(i)] = std::abs(param.dz(kTwoPi * i / samples));
  auto curve = std::make_shared<const ConvexCurve>(std::move(resampled.curve));
  return BoundaryMap::from_schedule(std::move(curve), std::move(resampled.arc_of_parameter), std::move(speeds),
                                    0.0, modes);
}

BoundaryMap smooth_monotone(const BoundaryMap& map, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "eps must lie in (0, 1)");
  const int k = map.size();
  const double dt = map.step();
  const double rate = map.increment() / kTwoPi;
  const auto s = map.schedule();

  // Periodic part p(t) = s(t) - rate * t, linearly interpolated between samples.
  std::vector<double> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] - rate * dt * i;
  const double p_mean = std::accumulate(p.begin(), p.end(), 0.0) / k;
  auto p_at = [&](double t) {
    double x = t / dt;
    const double fl = std::floor(x);
    const double frac = x - fl;
    int i = static_cast<int>(fl) % k;
    if (i < 0) i += k;
    const int j = (i + 1) % k;
    return (1.0 - frac) * p[static_cast<std::size_t>(i)] + frac * p[static_cast<std::size_t>(j)];
  };
  auto kernel = [&](double u) { return (eps - std::abs(u)) / (eps * eps); };

  // The integrand is piecewise quadratic between breakpoints, so Simpson is exact there.
  std::vector<double> out(static_cast<std::size_t>(k));
  std::vector<double> cuts;
  for (int i = 0; i < k; ++i) {
    const double t = dt * i;
    cuts.assign({-eps, 0.0, eps});
    const int lo = static_cast<int>(std::ceil((t - eps) / dt));
    const int hi = static_cast<int>(std::floor((t + eps) / dt));
    for (int g = lo; g <= hi; ++g) {
      const double u = t - dt * g;
      if (u > -eps && u < eps) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    double conv = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c], b = cuts[c + 1];
      if (b - a <= 0.0) continue;
      const double mid = 0.5 * (a + b);
      conv += (b - a) / 6.0 *
              (p_at(t - a) * kernel(a) + 4.0 * p_at(t - mid) * kernel(mid) + p_at(t - b) * kernel(b));
    }
    out[static_cast<std::size_t>(i)] = rate * t + (1.0 - eps) * conv + eps * p_mean;
  }
  return BoundaryMap::from_schedule(map.curve_ptr(), std::move(out), {}, map.increment(), map.modes());
}

std::vector<cplx> fourier_coefficients(std::span<const cplx> samples, int n) {
  return truncated_coefficients(samples, n, nullptr);
}

std::vector<cplx> fourier_coefficients(const BoundaryMap& map, int n) {
  return fourier_coefficients(map.samples(), n);
}

MonotonicityReport monotonicity_degree_check(const BoundaryMap& map) {
  const auto s = map.schedule();
  const int k = map.size();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const double next = i + 1 < k ? s[static_cast<std::size_t>(i + 1)] : s[0] + map.increment();
    worst = std::min(worst, (next - s[static_cast<std::size_t>(i)]) / map.step());
  }
  const double total = map.increment();
  const double length = map.curve().length();
  const bool ok = worst >= -1e-9 && std::abs(total - length) <= 1e-12 * length;
  return {ok, worst, total};
}

}  // namespace hmlab
