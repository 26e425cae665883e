#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hmlab/boundary.hpp"
#include "hmlab/core.hpp"

namespace hmlab {

/// Values and first two derivatives of the analytic pair (f, g) of h = f + conj(g).
struct AnalyticJet {
  cplx f, f1, f2;
  cplx g, g1, g2;

  cplx value() const { return f + std::conj(g); }
  double jacobian() const { return std::norm(f1) - std::norm(g1); }
};

/// Power-series pair f = sum a_k z^k, g = sum b_k z^k evaluated by Horner.
class SeriesPair {
 public:
  SeriesPair() = default;
  SeriesPair(std::vector<cplx> a, std::vector<cplx> b);

  AnalyticJet jet(cplx z) const;
  cplx value(cplx z) const;
  std::span<const cplx> analytic() const { return a_; }
  std::span<const cplx> coanalytic() const { return b_; }

 private:
  std::vector<cplx> a_;
  std::vector<cplx> b_;
};

/// Polar sample grid r_i = max_radius * i / radial (i = 1..radial), theta_j = 2 pi j / angular.
struct PolarGrid {
  int radial = 64;
  int angular = 256;
  double max_radius = 0.999;

  std::size_t size() const { return static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular); }
  double radius(int i) const { return max_radius * (i + 1) / radial; }
  double angle(int j) const { return kTwoPi * j / angular; }
  cplx point(std::size_t idx) const;
};

/// Evaluates fn at every grid point (in parallel), returned in grid index order
/// idx = i * angular + j.
std::vector<double> sample_grid(const PolarGrid& grid, const std::function<double(cplx)>& fn);

inline constexpr double kAbelRadius = 1.0 - 1e-6;

/// Harmonic map of the unit disk given by boundary Fourier coefficients c_k,
/// |k| <= N: h(r e^{it}) = sum c_k r^|k| e^{ikt} = f(z) + conj(g(z)) with
/// f = sum_{k>=0} c_k z^k and g = sum_{k>=1} conj(c_{-k}) z^k.
class DiskHarmonicMap {
 public:
  DiskHarmonicMap() = default;
  /// Coefficients at index k + N, size 2N + 1.
  explicit DiskHarmonicMap(std::vector<cplx> coeffs, double tail = 0.0);

  int modes() const { return modes_; }
  cplx coefficient(int k) const;
  std::span<const cplx> coefficients() const { return coeffs_; }
  /// Sum of |c_k| beyond the truncation, carried over from the boundary data.
  double tail_bound() const { return tail_; }
  const SeriesPair& series() const { return series_; }

  /// conj(h): the orientation-reversed map.
  DiskHarmonicMap conjugated() const;
  /// w -> a * h + b.
  DiskHarmonicMap affine_image(cplx a, cplx b) const;

  AnalyticJet jet(cplx z) const;

 private:
  int modes_ = 0;
  std::vector<cplx> coeffs_;
  double tail_ = 0.0;
  SeriesPair series_;
};

DiskHarmonicMap extend(std::span<const cplx> coeffs);
DiskHarmonicMap extend(const BoundaryMap& map);

cplx eval(const DiskHarmonicMap& h, cplx z);
/// (h_z, h_zbar) = (f', conj(g')).
std::pair<cplx, cplx> wirtinger(const DiskHarmonicMap& h, cplx z);
/// (f'', g'').
std::pair<cplx, cplx> wirtinger2(const DiskHarmonicMap& h, cplx z);
double jacobian(const DiskHarmonicMap& h, cplx z);
/// J_z = f'' conj(f') - g'' conj(g').
cplx jacobian_z(const DiskHarmonicMap& h, cplx z);
/// J_{z zbar} = |f''|^2 - |g''|^2.
double jacobian_zzbar(const DiskHarmonicMap& h, cplx z);
/// d/dr h(r e^{i theta}) = f' e^{i theta} + conj(g' e^{i theta}).
cplx radial_derivative(const DiskHarmonicMap& h, double r, double theta);
/// |h_z|^2 + |h_zbar|^2.
double heinz_energy(const DiskHarmonicMap& h, cplx z);

struct HallQuantities {
  double energy;        // |a1|^2 + |b1|^2
  double analytic_one;  // |a1|
};
HallQuantities hall_quantities(const DiskHarmonicMap& h);

/// sup over the grid of |h_zbar / h_z|.
double second_dilatation_sup(const DiskHarmonicMap& h, const PolarGrid& grid);

/// Laplacian of a scalar field at z from 64-point circle means at rho, rho/2, rho/4, rho/8,
/// extrapolated in rho^2.
double circle_mean_laplacian(const std::function<double(cplx)>& u, cplx z, double rho);

/// Wirtinger derivative u_z of a real field from the first circle moment, same radii.
cplx circle_mean_dz(const std::function<double(cplx)>& u, cplx z, double rho);

struct IdentitySides {
  double lhs;  // finite-difference side
  double rhs;  // series side
};
/// -(ln J)_{z zbar} J^2 against |f' g'' - g' f''|^2.
IdentitySides log_jacobian_curvature(const DiskHarmonicMap& h, cplx z);
/// (1/J)_{z zbar} J^3 against 2 |J_z|^2 - J J_{z zbar}.
IdentitySides reciprocal_jacobian_curvature(const DiskHarmonicMap& h, cplx z);
/// Finite-difference J_z against the series value.
std::pair<cplx, cplx> jacobian_z_check(const DiskHarmonicMap& h, cplx z);

/// Harmonic polynomial h = f + conj(g) on the whole plane (no disk restriction).
class PlaneHarmonicPolynomial {
 public:
  /// f = sum a_k z^k, g = sum b_k z^k.
  PlaneHarmonicPolynomial(std::vector<cplx> a, std::vector<cplx> b) : series_(std::move(a), std::move(b)) {}

  cplx eval(cplx z) const { return series_.value(z); }
  AnalyticJet jet(cplx z) const { return series_.jet(z); }
  double jacobian(cplx z) const { return series_.jet(z).jacobian(); }
  std::pair<cplx, cplx> wirtinger(cplx z) const;
  const SeriesPair& series() const { return series_; }

 private:
  SeriesPair series_;
};

}  // namespace hmlab
