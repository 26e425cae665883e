#include "hmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace hmlab {

namespace {

// FFTW planning is not thread-safe; plans are made once per (size, sign)
// under a lock and executed concurrently through the new-array interface.
fftw_plan plan_for(int m, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(mu);
  auto& p = plans[{m, sign}];
  if (!p) {
    std::vector<cplx> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
    p = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(a.data()), reinterpret_cast<fftw_complex*>(b.data()),
                         sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error(ErrorCode::NumericsError, "FFT plan failed");
  }
  return p;
}

std::vector<cplx> transform(std::span<const cplx> x, int sign) {
  if (x.empty()) return {};
  std::vector<cplx> in(x.begin(), x.end());
  std::vector<cplx> out(x.size());
  fftw_execute_dft(plan_for(static_cast<int>(x.size()), sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> x) {
  auto c = transform(x, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : c) v *= scale;
  return c;
}

std::vector<cplx> idft(std::span<const cplx> c) { return transform(c, FFTW_BACKWARD); }

std::vector<cplx> to_complex(std::span<const double> x) {
  return std::vector<cplx>(x.begin(), x.end());
}

PeriodicInterpolant::PeriodicInterpolant(std::span<const cplx> samples, double period) {
  if (samples.empty()) throw Error(ErrorCode::InsufficientSamples, "empty sample set");
  const auto c = dft(samples);
  *this = from_coefficients(c, period);
}

PeriodicInterpolant PeriodicInterpolant::from_coefficients(std::span<const cplx> fft_ordered,
                                                           double period) {
  PeriodicInterpolant out;
  out.period_ = period;
  const std::size_t m = fft_ordered.size();
  const int half = static_cast<int>(m / 2);
  const bool even = m % 2 == 0;

  auto coeff = [&](int k) -> cplx {
    // Nyquist mode is split evenly between +M/2 and -M/2.
    if (even && std::abs(k) == half) return 0.5 * fft_ordered[static_cast<std::size_t>(half)];
    const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
    return fft_ordered[idx];
  };

  double largest = 0.0;
  for (const auto& v : fft_ordered) largest = std::max(largest, std::abs(v));
  // Coefficients under 1e-14 of the largest sit at the roundoff plateau of the
  // sampled data; interpolating them only reproduces noise.
  const double floor = 1e-14 * largest;
  int band = 0;
  for (int k = half; k >= 1; --k) {
    if (std::abs(coeff(k)) > floor || std::abs(coeff(-k)) > floor) {
      band = k;
      break;
    }
  }
  out.bandwidth_ = band;
  out.coeffs_.resize(static_cast<std::size_t>(2 * band + 1));
  for (int k = -band; k <= band; ++k) out.coeffs_[static_cast<std::size_t>(k + band)] = coeff(k);
  return out;
}

cplx PeriodicInterpolant::coefficient(int k) const {
  if (std::abs(k) > bandwidth_) return {};
  return coeffs_[static_cast<std::size_t>(k + bandwidth_)];
}

cplx PeriodicInterpolant::evaluate(double u, int order) const {
  const double theta = kTwoPi * u / period_;
  const double omega = kTwoPi / period_;
  const cplx step = std::polar(1.0, theta);
  cplx acc{};
  cplx phase = std::polar(1.0, -bandwidth_ * theta);
  for (int k = -bandwidth_; k <= bandwidth_; ++k) {
    const int i = k + bandwidth_;
    if (i > 0 && i % 64 == 0) phase = std::polar(1.0, k * theta);
    cplx term = coeffs_[static_cast<std::size_t>(i)] * phase;
    if (order > 0) term *= std::pow(cplx(0.0, omega * k), order);
    acc += term;
    phase *= step;
  }
  return acc;
}

std::array<cplx, 3> PeriodicInterpolant::jet(double u) const {
  const double theta = kTwoPi * u / period_;
  const double omega = kTwoPi / period_;
  const cplx step = std::polar(1.0, theta);
  std::array<cplx, 3> acc{};
  cplx phase = std::polar(1.0, -bandwidth_ * theta);
  for (int k = -bandwidth_; k <= bandwidth_; ++k) {
    const int i = k + bandwidth_;
    if (i > 0 && i % 64 == 0) phase = std::polar(1.0, k * theta);
    const cplx term = coeffs_[static_cast<std::size_t>(i)] * phase;
    const cplx ik(0.0, omega * k);
    acc[0] += term;
    acc[1] += ik * term;
    acc[2] += ik * ik * term;
    phase *= step;
  }
  return acc;
}

SecularSeries::SecularSeries(std::span<const cplx> derivative_samples, double period) {
  const std::size_t m = derivative_samples.size();
  if (m < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two samples");
  auto c = dft(derivative_samples);
  slope_ = c[0];
  std::vector<cplx> d(m);
  cplx sum{};
  for (std::size_t k = 1; k < m; ++k) {
    if (m % 2 == 0 && k == m / 2) continue;  // Nyquist primitive vanishes on the grid
    const int freq = signed_frequency(k, m);
    d[k] = c[k] * period / (kTwoPi * cplx(0.0, freq));
    sum += d[k];
  }
  offset_ = -sum;
  periodic_ = PeriodicInterpolant::from_coefficients(d, period);
  auto grid = idft(d);
  grid_values_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double u = period * static_cast<double>(j) / static_cast<double>(m);
    grid_values_[j] = slope_ * u + offset_ + grid[j];
  }
}

}  // namespace hmlab
