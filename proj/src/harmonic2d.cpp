#include "hmlab/harmonic2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hmlab/parallel.hpp"

namespace hmlab {

namespace {

void trim(std::vector<cplx>& c) {
  while (!c.empty() && c.back() == cplx{}) c.pop_back();
}

// Horner for p, p', p'' at once.
void horner(std::span<const cplx> c, cplx z, cplx& p, cplx& d1, cplx& d2) {
  p = d1 = d2 = cplx{};
  for (std::size_t k = c.size(); k-- > 0;) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + p;
    p = p * z + c[k];
  }
}

constexpr int kCirclePoints = 64;
constexpr int kCircleLevels = 4;

// Circle-mean quotients expand in even powers of the radius; radii halve per level.
template <class T>
T richardson_even(std::array<T, kCircleLevels> d) {
  for (int l = 1; l < kCircleLevels; ++l) {
    const double f = std::ldexp(1.0, 2 * l);
    for (int i = kCircleLevels - 1; i >= l; --i)
      d[static_cast<std::size_t>(i)] = (f * d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i - 1)]) / (f - 1.0);
  }
  return d[kCircleLevels - 1];
}

void require_open_disk(cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideOpenDisk, "point must satisfy |z| < 1");
}

}  // namespace

SeriesPair::SeriesPair(std::vector<cplx> a, std::vector<cplx> b) : a_(std::move(a)), b_(std::move(b)) {
  trim(a_);
  trim(b_);
}

AnalyticJet SeriesPair::jet(cplx z) const {
  AnalyticJet j{};
  horner(a_, z, j.f, j.f1, j.f2);
  horner(b_, z, j.g, j.g1, j.g2);
  return j;
}

cplx SeriesPair::value(cplx z) const {
  cplx f{}, g{};
  for (std::size_t k = a_.size(); k-- > 0;) f = f * z + a_[k];
  for (std::size_t k = b_.size(); k-- > 0;) g = g * z + b_[k];
  return f + std::conj(g);
}

cplx PolarGrid::point(std::size_t idx) const {
  const int i = static_cast<int>(idx / static_cast<std::size_t>(angular));
  const int j = static_cast<int>(idx % static_cast<std::size_t>(angular));
  return std::polar(radius(i), angle(j));
}

std::vector<double> sample_grid(const PolarGrid& grid, const std::function<double(cplx)>& fn) {
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t idx) { out[idx] = fn(grid.point(idx)); });
  return out;
}

DiskHarmonicMap::DiskHarmonicMap(std::vector<cplx> coeffs, double tail)
    : coeffs_(std::move(coeffs)), tail_(tail) {
  if (coeffs_.size() % 2 == 0) throw Error(ErrorCode::InvalidArgument, "coefficient vector must have odd size");
  modes_ = static_cast<int>(coeffs_.size() / 2);
  std::vector<cplx> a(static_cast<std::size_t>(modes_ + 1)), b(static_cast<std::size_t>(modes_ + 1));
  for (int k = 0; k <= modes_; ++k) a[static_cast<std::size_t>(k)] = coefficient(k);
  for (int k = 1; k <= modes_; ++k) b[static_cast<std::size_t>(k)] = std::conj(coefficient(-k));
  series_ = SeriesPair(std::move(a), std::move(b));
}

cplx DiskHarmonicMap::coefficient(int k) const {
  if (std::abs(k) > modes_) return {};
  return coeffs_[static_cast<std::size_t>(k + modes_)];
}

DiskHarmonicMap DiskHarmonicMap::conjugated() const {
  std::vector<cplx> c(coeffs_.size());
  for (int k = -modes_; k <= modes_; ++k) c[static_cast<std::size_t>(k + modes_)] = std::conj(coefficient(-k));
  return DiskHarmonicMap(std::move(c), tail_);
}

DiskHarmonicMap DiskHarmonicMap::affine_image(cplx a, cplx b) const {
  std::vector<cplx> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * coeffs_[i];
  c[static_cast<std::size_t>(modes_)] += b;
  return DiskHarmonicMap(std::move(c), std::abs(a) * tail_);
}

AnalyticJet DiskHarmonicMap::jet(cplx z) const { return series_.jet(z); }

DiskHarmonicMap extend(std::span<const cplx> coeffs) {
  return DiskHarmonicMap(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

DiskHarmonicMap extend(const BoundaryMap& map) {
  return DiskHarmonicMap(std::vector<cplx>(map.coefficients().begin(), map.coefficients().end()),
                         map.tail_bound());
}

cplx eval(const DiskHarmonicMap& h, cplx z) {
  if (std::abs(z) > 1.0 + 1e-12) throw Error(ErrorCode::OutsideDisk, "point must satisfy |z| <= 1");
  return h.series().value(z);
}

std::pair<cplx, cplx> wirtinger(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto j = h.jet(z);
  return {j.f1, std::conj(j.g1)};
}

std::pair<cplx, cplx> wirtinger2(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto j = h.jet(z);
  return {j.f2, j.g2};
}

double jacobian(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  return h.jet(z).jacobian();
}

cplx jacobian_z(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto j = h.jet(z);
  return j.f2 * std::conj(j.f1) - j.g2 * std::conj(j.g1);
}

double jacobian_zzbar(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto j = h.jet(z);
  return std::norm(j.f2) - std::norm(j.g2);
}

cplx radial_derivative(const DiskHarmonicMap& h, double r, double theta) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::OutsideOpenDisk, "radius must lie in (0, 1)");
  const cplx e = std::polar(1.0, theta);
  const auto j = h.jet(r * e);
  return j.f1 * e + std::conj(j.g1 * e);
}

double heinz_energy(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto j = h.jet(z);
  return std::norm(j.f1) + std::norm(j.g1);
}

HallQuantities hall_quantities(const DiskHarmonicMap& h) {
  const cplx a1 = h.coefficient(1);
  const cplx b1 = h.coefficient(-1);
  return {std::norm(a1) + std::norm(b1), std::abs(a1)};
}

double second_dilatation_sup(const DiskHarmonicMap& h, const PolarGrid& grid) {
  const auto values = sample_grid(grid, [&](cplx z) {
    const auto j = h.jet(z);
    if (std::abs(j.f1) == 0.0) throw Error(ErrorCode::VanishingFz, "h_z vanishes on the grid");
    return std::abs(j.g1) / std::abs(j.f1);
  });
  return *std::max_element(values.begin(), values.end());
}

double circle_mean_laplacian(const std::function<double(cplx)>& u, cplx z, double rho) {
  const double u0 = u(z);
  std::array<double, kCircleLevels> d{};
  for (int l = 0; l < kCircleLevels; ++l) {
    const double r = std::ldexp(rho, -l);
    double acc = 0.0;
    for (int j = 0; j < kCirclePoints; ++j) acc += u(z + std::polar(r, kTwoPi * (j + 0.5) / kCirclePoints)) - u0;
    d[static_cast<std::size_t>(l)] = 4.0 * (acc / kCirclePoints) / (r * r);
  }
  return richardson_even(d);
}

cplx circle_mean_dz(const std::function<double(cplx)>& u, cplx z, double rho) {
  std::array<cplx, kCircleLevels> d{};
  for (int l = 0; l < kCircleLevels; ++l) {
    const double r = std::ldexp(rho, -l);
    cplx acc{};
    for (int j = 0; j < kCirclePoints; ++j) {
      const double t = kTwoPi * (j + 0.5) / kCirclePoints;
      acc += u(z + std::polar(r, t)) * std::polar(1.0, -t);
    }
    d[static_cast<std::size_t>(l)] = acc / (kCirclePoints * r);
  }
  return richardson_even(d);
}

namespace {

double stencil_radius(cplx z) { return std::min(0.2, 0.5 * (1.0 - std::abs(z))); }

double positive_jacobian(const DiskHarmonicMap& h, cplx w) {
  const double j = h.jet(w).jacobian();
  if (!(j > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "J <= 0 near the evaluation point");
  return j;
}

}  // namespace

IdentitySides log_jacobian_curvature(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto jt = h.jet(z);
  const double j = jt.jacobian();
  if (!(j > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "J <= 0 at the evaluation point");
  const double lap = circle_mean_laplacian([&](cplx w) { return std::log(positive_jacobian(h, w)); }, z,
                                           stencil_radius(z));
  const double lhs = -0.25 * lap * j * j;
  const double rhs = std::norm(jt.f1 * jt.g2 - jt.g1 * jt.f2);
  return {lhs, rhs};
}

IdentitySides reciprocal_jacobian_curvature(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  const auto jt = h.jet(z);
  const double j = jt.jacobian();
  if (!(j > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "J <= 0 at the evaluation point");
  const double lap = circle_mean_laplacian([&](cplx w) { return 1.0 / positive_jacobian(h, w); }, z,
                                           stencil_radius(z));
  const double lhs = 0.25 * lap * j * j * j;
  const cplx jz = jt.f2 * std::conj(jt.f1) - jt.g2 * std::conj(jt.g1);
  const double jzz = std::norm(jt.f2) - std::norm(jt.g2);
  return {lhs, 2.0 * std::norm(jz) - j * jzz};
}

std::pair<cplx, cplx> jacobian_z_check(const DiskHarmonicMap& h, cplx z) {
  require_open_disk(z);
  return {circle_mean_dz([&](cplx w) { return h.jet(w).jacobian(); }, z, stencil_radius(z)), jacobian_z(h, z)};
}

std::pair<cplx, cplx> PlaneHarmonicPolynomial::wirtinger(cplx z) const {
  const auto j = series_.jet(z);
  return {j.f1, std::conj(j.g1)};
}

}  // namespace hmlab
