#pragma once

#include <array>
#include <span>
#include <vector>

#include "hmlab/core.hpp"

namespace hmlab {

/// c_k = (1/M) sum_j x_j exp(-2 pi i j k / M), k = 0..M-1 in FFT ordering.
std::vector<cplx> dft(std::span<const cplx> x);
/// x_j = sum_k c_k exp(2 pi i j k / M); inverse of dft().
std::vector<cplx> idft(std::span<const cplx> c);

/// Signed frequency of FFT-ordered index k for length m.
inline int signed_frequency(std::size_t k, std::size_t m) {
  return k <= m / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(m);
}

/// Trigonometric interpolant of uniform samples of a P-periodic function.
/// Tail coefficients below 1e-14 of the largest one are trimmed, so
/// evaluation of smooth data costs O(bandwidth) rather than O(M).
class PeriodicInterpolant {
 public:
  PeriodicInterpolant() = default;
  PeriodicInterpolant(std::span<const cplx> samples, double period);
  /// Builds the interpolant directly from FFT-ordered coefficients.
  static PeriodicInterpolant from_coefficients(std::span<const cplx> fft_ordered, double period);

  cplx operator()(double u) const { return evaluate(u, 0); }
  /// Value of the order-th derivative at u.
  cplx evaluate(double u, int order) const;
  /// Value, first and second derivative at u in one pass.
  std::array<cplx, 3> jet(double u) const;

  double period() const { return period_; }
  int bandwidth() const { return bandwidth_; }
  /// Coefficient of exp(2 pi i k u / P); zero outside the retained band.
  cplx coefficient(int k) const;

 private:
  double period_ = 1.0;
  int bandwidth_ = 0;
  std::vector<cplx> coeffs_;  // index k + bandwidth_
};

/// Function of the form slope * u + offset + periodic(u): the primitive of a
/// periodic function with nonzero mean.
class SecularSeries {
 public:
  SecularSeries() = default;
  /// Primitive of the periodic samples, normalized so value(0) = 0.
  SecularSeries(std::span<const cplx> derivative_samples, double period);

  cplx value(double u) const { return slope_ * u + offset_ + periodic_(u); }
  cplx derivative(double u) const { return slope_ + periodic_.evaluate(u, 1); }
  cplx slope() const { return slope_; }
  /// Values on the sample grid u_j = j P / M, computed in one inverse transform.
  const std::vector<cplx>& grid_values() const { return grid_values_; }

 private:
  cplx slope_{};
  cplx offset_{};
  PeriodicInterpolant periodic_;
  std::vector<cplx> grid_values_;
};

/// Real-valued convenience wrappers.
std::vector<cplx> to_complex(std::span<const double> x);

}  // namespace hmlab
