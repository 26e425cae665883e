#pragma once

#include <functional>
#include <vector>

#include "hmlab/core.hpp"
#include "hmlab/random.hpp"

namespace hmlab {

/// Dense polynomial in (x, y, z): coefficient a_{ijk} of x^i y^j z^k, i + j + k <= degree.
class Poly3 {
 public:
  Poly3() : Poly3(0) {}
  explicit Poly3(int degree);
  static Poly3 monomial(int i, int j, int k, double coeff = 1.0);

  int degree() const { return degree_; }
  double coeff(int i, int j, int k) const;
  void set(int i, int j, int k, double value);
  void add(int i, int j, int k, double value);

  double operator()(const Vec3& p) const;
  Poly3 derivative(int axis) const;
  Poly3 laplacian() const;
  /// Largest |coefficient|.
  double max_abs() const;

  Poly3 operator+(const Poly3& o) const;
  Poly3 operator-(const Poly3& o) const;
  Poly3 operator*(const Poly3& o) const;
  Poly3 operator*(double s) const;

 private:
  std::size_t index(int i, int j, int k) const;
  int degree_;
  std::vector<double> a_;
};

/// Polynomial with vanishing Laplacian (checked on construction, relative 1e-12).
class HarmonicPoly3 {
 public:
  explicit HarmonicPoly3(Poly3 p);
  const Poly3& poly() const { return p_; }
  double operator()(const Vec3& x) const { return p_(x); }
  HarmonicPoly3 operator+(const HarmonicPoly3& o) const { return HarmonicPoly3(p_ + o.p_); }
  HarmonicPoly3 operator*(double s) const { return HarmonicPoly3(p_ * s); }

 private:
  Poly3 p_;
};

/// Map x -> (u(x), v(x), w(x)) with polynomial components.
struct PolyMap3 {
  Poly3 u, v, w;

  Vec3 operator()(const Vec3& p) const { return {u(p), v(p), w(p)}; }
  const Poly3& component(int i) const { return i == 0 ? u : (i == 1 ? v : w); }
};

/// Solid harmonics of degrees 1..max_degree (2d + 1 per degree), built by
/// continuing x^i y^{d-i} and x^i y^{d-1-i} off the plane z = 0.
std::vector<HarmonicPoly3> harmonic_basis(int max_degree);

/// Random combination of the degree 1..max_degree basis: standard normal
/// weights, each basis element scaled to unit largest coefficient.
HarmonicPoly3 random_harmonic(Rng& rng, int max_degree);

PolyMap3 gradient_map(const HarmonicPoly3& u);
Mat3 hessian(const HarmonicPoly3& u, const Vec3& p);
double hessian_det(const HarmonicPoly3& u, const Vec3& p);
/// Hessian determinant as a polynomial.
Poly3 hessian_det_poly(const HarmonicPoly3& u);

struct Jacobian3 {
  Mat3 matrix;
  double det;
};
Jacobian3 jacobian3(const PolyMap3& f, const Vec3& p);

struct CrResidual {
  double symmetry;  // max |J_ij - J_ji|
  double trace;     // |tr J|
};
CrResidual cr_residual(const PolyMap3& f, const Vec3& p);

/// Largest |H| a traceless symmetric matrix with the same Frobenius norm can have.
double hessian_scale(const HarmonicPoly3& u, const Vec3& p);

/// Seven-point Laplacian of ln|H| at p, steps (h, h/2, h/4) and Richardson.
/// The step is capped at a tenth of |H| / |grad H|.
/// Throws HessianTooSmall when |H(p)| <= eta; a negative eta selects
/// eta = 0.1 * hessian_scale(u, p).
double lgw_residual(const HarmonicPoly3& u, const Vec3& p, double step = 1e-2, double eta = -1.0);
/// Same quantity from the polynomial H: (Delta H) / H - |grad H|^2 / H^2.
double lgw_exact(const HarmonicPoly3& u, const Vec3& p);

/// Product grid on the unit sphere: Gauss-Legendre in cos(polar) times uniform azimuth.
struct SphereGrid {
  std::vector<Vec3> nodes;
  std::vector<double> weights;  // sum to 4 pi
};
SphereGrid sphere_grid(int polar = 64, int azimuth = 128);

struct BallBoundaryData {
  SphereGrid grid;
  std::vector<Vec3> values;

  static BallBoundaryData sample(const std::function<Vec3(const Vec3&)>& f, int polar = 64, int azimuth = 128);
};

/// Poisson integral (1 - |x|^2) / |x - xi|^3 against d sigma / 4 pi.
Vec3 poisson_ball_extend(const BallBoundaryData& data, const Vec3& x);

/// Solid ellipsoid sum (x_i - c_i)^2 / a_i^2 <= 1 (axis aligned).
struct Ellipsoid {
  Vec3 semi_axes;
  Vec3 center = Vec3::Zero();

  Ellipsoid(const Vec3& axes, const Vec3& c = Vec3::Zero());
  bool contains(const Vec3& p) const;
  /// Euclidean distance to the surface, with the closest surface point.
  double distance(const Vec3& p, Vec3* closest = nullptr) const;
};

/// Interior sample points of the ball: radii r_i = max_radius * i / radial,
/// Gauss-Legendre polar nodes, uniform azimuth.
struct BallGrid {
  int radial = 16;
  int polar = 16;
  int azimuth = 32;
  double max_radius = 0.999;

  std::vector<Vec3> points() const;
  /// Points with i = radial (the outermost shell).
  std::vector<Vec3> shell() const;
};

struct HarnackMargin {
  double margin;
  Vec3 argmin;
  double inradius;
  double constant;
  std::size_t evaluations;
};
/// min over the grid of d(h(x), boundary) - (1 - |x|) R0 / 4, R0 = d(h(0), boundary).
HarnackMargin harnack_distance_margin(const std::function<Vec3(const Vec3&)>& h, const BallGrid& grid,
                                      const Ellipsoid& target);

}  // namespace hmlab
