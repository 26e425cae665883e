#include "hmlab/harmonic3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hmlab/quadrature.hpp"

namespace hmlab {

Poly3::Poly3(int degree) : degree_(degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative polynomial degree");
  const auto n = static_cast<std::size_t>(degree + 1);
  a_.assign(n * n * n, 0.0);
}

Poly3 Poly3::monomial(int i, int j, int k, double coeff) {
  Poly3 p(i + j + k);
  p.set(i, j, k, coeff);
  return p;
}

std::size_t Poly3::index(int i, int j, int k) const {
  const auto n = static_cast<std::size_t>(degree_ + 1);
  return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
}

double Poly3::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k > degree_) return 0.0;
  return a_[index(i, j, k)];
}

void Poly3::set(int i, int j, int k, double value) {
  if (i < 0 || j < 0 || k < 0 || i + j + k > degree_)
    throw Error(ErrorCode::InvalidArgument, "monomial exceeds the polynomial degree");
  a_[index(i, j, k)] = value;
}

void Poly3::add(int i, int j, int k, double value) { set(i, j, k, coeff(i, j, k) + value); }

double Poly3::operator()(const Vec3& p) const {
  std::array<double, 32> xp{}, yp{}, zp{};
  if (degree_ >= 32) throw Error(ErrorCode::DegreeTooLarge, "polynomial degree too large to evaluate");
  xp[0] = yp[0] = zp[0] = 1.0;
  for (int d = 1; d <= degree_; ++d) {
    xp[d] = xp[d - 1] * p.x();
    yp[d] = yp[d - 1] * p.y();
    zp[d] = zp[d - 1] * p.z();
  }
  double sum = 0.0;
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j) {
      double inner = 0.0;
      for (int k = 0; i + j + k <= degree_; ++k) inner += a_[index(i, j, k)] * zp[k];
      sum += xp[i] * yp[j] * inner;
    }
  return sum;
}

Poly3 Poly3::derivative(int axis) const {
  Poly3 out(std::max(0, degree_ - 1));
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j)
      for (int k = 0; i + j + k <= degree_; ++k) {
        const double c = a_[index(i, j, k)];
        if (c == 0.0) continue;
        if (axis == 0 && i > 0) out.add(i - 1, j, k, i * c);
        if (axis == 1 && j > 0) out.add(i, j - 1, k, j * c);
        if (axis == 2 && k > 0) out.add(i, j, k - 1, k * c);
      }
  return out;
}

Poly3 Poly3::laplacian() const {
  return derivative(0).derivative(0) + derivative(1).derivative(1) + derivative(2).derivative(2);
}

double Poly3::max_abs() const {
  double m = 0.0;
  for (double c : a_) m = std::max(m, std::abs(c));
  return m;
}

Poly3 Poly3::operator+(const Poly3& o) const {
  Poly3 out(std::max(degree_, o.degree_));
  for (const Poly3* src : {this, &o})
    for (int i = 0; i <= src->degree_; ++i)
      for (int j = 0; i + j <= src->degree_; ++j)
        for (int k = 0; i + j + k <= src->degree_; ++k) out.add(i, j, k, src->coeff(i, j, k));
  return out;
}

Poly3 Poly3::operator-(const Poly3& o) const { return *this + o * -1.0; }

Poly3 Poly3::operator*(const Poly3& o) const {
  Poly3 out(degree_ + o.degree_);
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j)
      for (int k = 0; i + j + k <= degree_; ++k) {
        const double c = coeff(i, j, k);
        if (c == 0.0) continue;
        for (int p = 0; p <= o.degree_; ++p)
          for (int q = 0; p + q <= o.degree_; ++q)
            for (int r = 0; p + q + r <= o.degree_; ++r) {
              const double d = o.coeff(p, q, r);
              if (d != 0.0) out.add(i + p, j + q, k + r, c * d);
            }
      }
  return out;
}

Poly3 Poly3::operator*(double s) const {
  Poly3 out = *this;
  for (auto& c : out.a_) c *= s;
  return out;
}

HarmonicPoly3::HarmonicPoly3(Poly3 p) : p_(std::move(p)) {
  const double lap = p_.laplacian().max_abs();
  if (lap > 1e-12 * std::max(1.0, p_.max_abs()))
    throw Error(ErrorCode::NotHarmonic, "Laplacian has a coefficient of size " + std::to_string(lap));
}

std::vector<HarmonicPoly3> harmonic_basis(int max_degree) {
  if (max_degree > 6) throw Error(ErrorCode::DegreeTooLarge, "harmonic basis supports degree <= 6");
  if (max_degree < 1) throw Error(ErrorCode::InvalidArgument, "basis degree must be >= 1");
  auto planar_laplacian = [](const Poly3& p) { return p.derivative(0).derivative(0) + p.derivative(1).derivative(1); };
  // u = sum_m (-1)^m z^{2m}/(2m)! L^m p + (-1)^m z^{2m+1}/(2m+1)! L^m q, with L the planar Laplacian.
  auto continue_off_plane = [&](Poly3 seed, int parity) {
    Poly3 u(seed.degree() + parity);
    double factorial = 1.0;
    for (int n = 1; n <= parity; ++n) factorial *= n;
    for (int m = 0; seed.max_abs() != 0.0; ++m) {
      const int power = 2 * m + parity;
      u = u + seed * Poly3::monomial(0, 0, power, (m % 2 == 0 ? 1.0 : -1.0) / factorial);
      seed = planar_laplacian(seed);
      factorial *= (power + 1) * (power + 2);
    }
    return u;
  };
  std::vector<HarmonicPoly3> basis;
  for (int d = 1; d <= max_degree; ++d) {
    for (int i = d; i >= 0; --i) basis.emplace_back(continue_off_plane(Poly3::monomial(i, d - i, 0), 0));
    for (int i = d - 1; i >= 0; --i) basis.emplace_back(continue_off_plane(Poly3::monomial(i, d - 1 - i, 0), 1));
  }
  return basis;
}

HarmonicPoly3 random_harmonic(Rng& rng, int max_degree) {
  const auto basis = harmonic_basis(max_degree);
  Poly3 sum(max_degree);
  for (const auto& b : basis) sum = sum + b.poly() * (rng.normal() / b.poly().max_abs());
  return HarmonicPoly3(std::move(sum));
}

PolyMap3 gradient_map(const HarmonicPoly3& u) {
  return {u.poly().derivative(0), u.poly().derivative(1), u.poly().derivative(2)};
}

Mat3 hessian(const HarmonicPoly3& u, const Vec3& p) {
  Mat3 m;
  for (int a = 0; a < 3; ++a) {
    const Poly3 da = u.poly().derivative(a);
    for (int b = 0; b < 3; ++b) m(a, b) = da.derivative(b)(p);
  }
  return m;
}

double hessian_det(const HarmonicPoly3& u, const Vec3& p) { return hessian(u, p).determinant(); }

Poly3 hessian_det_poly(const HarmonicPoly3& u) {
  std::array<std::array<Poly3, 3>, 3> h;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) h[a][b] = u.poly().derivative(a).derivative(b);
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

Jacobian3 jacobian3(const PolyMap3& f, const Vec3& p) {
  Mat3 m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = f.component(a).derivative(b)(p);
  return {m, m.determinant()};
}

CrResidual cr_residual(const PolyMap3& f, const Vec3& p) {
  const Mat3 m = jacobian3(f, p).matrix;
  return {(m - m.transpose()).cwiseAbs().maxCoeff(), std::abs(m.trace())};
}

double hessian_scale(const HarmonicPoly3& u, const Vec3& p) {
  // Traceless symmetric: |det| <= F^3 / (3 sqrt 6), attained at eigenvalues (a, a, -2a).
  const double f = hessian(u, p).norm();
  return f * f * f / (3.0 * std::sqrt(6.0));
}

double lgw_residual(const HarmonicPoly3& u, const Vec3& p, double step, double eta) {
  const Poly3 h = hessian_det_poly(u);
  if (eta < 0.0) eta = 0.1 * hessian_scale(u, p);
  const double h0 = h(p);
  if (!(std::abs(h0) > eta)) throw Error(ErrorCode::HessianTooSmall, "|H| <= eta at the evaluation point");
  // Keep the stencil well inside the region where ln|H| is smooth.
  const Vec3 grad(h.derivative(0)(p), h.derivative(1)(p), h.derivative(2)(p));
  const double reach = grad.norm() > 0.0 ? std::abs(h0) / grad.norm() : step;
  const double s0 = std::max(1e-4, std::min(step, 0.1 * reach));
  const double c = std::log(std::abs(h0));
  auto lap = [&](double s) {
    double acc = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e = Vec3::Zero();
      e[axis] = s;
      acc += std::log(std::abs(h(p + e))) - 2.0 * c + std::log(std::abs(h(p - e)));
    }
    return acc / (s * s);
  };
  std::array<double, 3> d{lap(s0), lap(0.5 * s0), lap(0.25 * s0)};
  for (int l = 1; l < 3; ++l) {
    const double f = std::ldexp(1.0, 2 * l);
    for (int i = 2; i >= l; --i) d[static_cast<std::size_t>(i)] = (f * d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i - 1)]) / (f - 1.0);
  }
  return d[2];
}

double lgw_exact(const HarmonicPoly3& u, const Vec3& p) {
  const Poly3 h = hessian_det_poly(u);
  const double h0 = h(p);
  if (h0 == 0.0) throw Error(ErrorCode::HessianTooSmall, "H vanishes at the evaluation point");
  const Vec3 grad(h.derivative(0)(p), h.derivative(1)(p), h.derivative(2)(p));
  return h.laplacian()(p) / h0 - grad.squaredNorm() / (h0 * h0);
}

SphereGrid sphere_grid(int polar, int azimuth) {
  if (polar < 1 || azimuth < 1) throw Error(ErrorCode::InvalidArgument, "empty sphere grid");
  const auto rule = gauss_legendre(polar, -1.0, 1.0);
  SphereGrid g;
  g.nodes.reserve(static_cast<std::size_t>(polar * azimuth));
  g.weights.reserve(static_cast<std::size_t>(polar * azimuth));
  const double dphi = kTwoPi / azimuth;
  for (int i = 0; i < polar; ++i) {
    const double c = rule.nodes[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < azimuth; ++j) {
      const double phi = dphi * j;
      g.nodes.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
      g.weights.push_back(rule.weights[static_cast<std::size_t>(i)] * dphi);
    }
  }
  return g;
}

BallBoundaryData BallBoundaryData::sample(const std::function<Vec3(const Vec3&)>& f, int polar, int azimuth) {
  BallBoundaryData d{sphere_grid(polar, azimuth), {}};
  d.values.reserve(d.grid.nodes.size());
  for (const auto& xi : d.grid.nodes) d.values.push_back(f(xi));
  return d;
}

Vec3 poisson_ball_extend(const BallBoundaryData& data, const Vec3& x) {
  const double r2 = x.squaredNorm();
  if (!(r2 < 1.0)) throw Error(ErrorCode::OutsideBall, "point must satisfy |x| < 1");
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    const double d = (x - data.grid.nodes[i]).norm();
    acc += data.grid.weights[i] * (1.0 - r2) / (d * d * d) * data.values[i];
  }
  return acc / (2.0 * kTwoPi);
}

namespace {

// Distance from a point to an ellipse/ellipsoid with sorted semi-axes, point
// in the closed first octant (after Eberly, "Distance from a Point to an Ellipse,
// an Ellipsoid, or a Hyperellipsoid").
double bisect_root(const std::function<double(double)>& f, double s0, double s1) {
  double s = s0;
  for (int it = 0; it < 2200; ++it) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    const double v = f(s);
    if (v > 0.0)
      s0 = s;
    else if (v < 0.0)
      s1 = s;
    else
      break;
  }
  return s;
}

double ellipse_distance(double e0, double e1, double y0, double y1, double& x0, double& x1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0, z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g != 0.0) {
        const double r0 = (e0 / e1) * (e0 / e1);
        const double n0 = r0 * z0;
        auto f = [&](double s) {
          const double a = n0 / (s + r0), b = z1 / (s + 1.0);
          return a * a + b * b - 1.0;
        };
        const double sbar = bisect_root(f, z1 - 1.0, g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0);
        x0 = r0 * y0 / (sbar + r0);
        x1 = y1 / (sbar + 1.0);
        return std::hypot(x0 - y0, x1 - y1);
      }
      x0 = y0;
      x1 = y1;
      return 0.0;
    }
    x0 = 0.0;
    x1 = e1;
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0, denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    x0 = e0 * xde0;
    x1 = e1 * std::sqrt(1.0 - xde0 * xde0);
    return std::hypot(x0 - y0, x1);
  }
  x0 = e0;
  x1 = 0.0;
  return std::abs(y0 - e0);
}

double ellipsoid_distance(const std::array<double, 3>& e, const std::array<double, 3>& y, std::array<double, 3>& x) {
  if (y[2] > 0.0) {
    if (y[1] > 0.0) {
      if (y[0] > 0.0) {
        const double z0 = y[0] / e[0], z1 = y[1] / e[1], z2 = y[2] / e[2];
        const double g = z0 * z0 + z1 * z1 + z2 * z2 - 1.0;
        if (g != 0.0) {
          const double r0 = (e[0] / e[2]) * (e[0] / e[2]), r1 = (e[1] / e[2]) * (e[1] / e[2]);
          const double n0 = r0 * z0, n1 = r1 * z1;
          auto f = [&](double s) {
            const double a = n0 / (s + r0), b = n1 / (s + r1), c = z2 / (s + 1.0);
            return a * a + b * b + c * c - 1.0;
          };
          const double hi = g < 0.0 ? 0.0 : std::sqrt(n0 * n0 + n1 * n1 + z2 * z2) - 1.0;
          const double sbar = bisect_root(f, z2 - 1.0, hi);
          x[0] = r0 * y[0] / (sbar + r0);
          x[1] = r1 * y[1] / (sbar + r1);
          x[2] = y[2] / (sbar + 1.0);
          return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + (x[2] - y[2]) * (x[2] - y[2]));
        }
        x = y;
        return 0.0;
      }
      x[0] = 0.0;
      return ellipse_distance(e[1], e[2], y[1], y[2], x[1], x[2]);
    }
    x[1] = 0.0;
    if (y[0] > 0.0) return ellipse_distance(e[0], e[2], y[0], y[2], x[0], x[2]);
    x[0] = 0.0;
    x[2] = e[2];
    return std::abs(y[2] - e[2]);
  }
  const double denom0 = e[0] * e[0] - e[2] * e[2], denom1 = e[1] * e[1] - e[2] * e[2];
  const double numer0 = e[0] * y[0], numer1 = e[1] * y[1];
  if (numer0 < denom0 && numer1 < denom1) {
    const double xde0 = numer0 / denom0, xde1 = numer1 / denom1;
    const double discr = 1.0 - xde0 * xde0 - xde1 * xde1;
    if (discr > 0.0) {
      x[0] = e[0] * xde0;
      x[1] = e[1] * xde1;
      x[2] = e[2] * std::sqrt(discr);
      return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + x[2] * x[2]);
    }
  }
  x[2] = 0.0;
  return ellipse_distance(e[0], e[1], y[0], y[1], x[0], x[1]);
}

}  // namespace

Ellipsoid::Ellipsoid(const Vec3& axes, const Vec3& c) : semi_axes(axes), center(c) {
  if (!(axes.minCoeff() > 0.0)) throw Error(ErrorCode::InvalidAxes, "ellipsoid semi-axes must be positive");
}

bool Ellipsoid::contains(const Vec3& p) const {
  return (p - center).cwiseQuotient(semi_axes).squaredNorm() <= 1.0;
}

double Ellipsoid::distance(const Vec3& p, Vec3* closest) const {
  const Vec3 q = p - center;
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return semi_axes[a] > semi_axes[b]; });
  std::array<double, 3> e{}, y{}, x{};
  for (int i = 0; i < 3; ++i) {
    e[i] = semi_axes[order[i]];
    y[i] = std::abs(q[order[i]]);
  }
  const double d = ellipsoid_distance(e, y, x);
  if (closest) {
    for (int i = 0; i < 3; ++i) (*closest)[order[i]] = std::copysign(x[i], q[order[i]]);
    *closest += center;
  }
  return d;
}

std::vector<Vec3> BallGrid::points() const {
  const auto rule = gauss_legendre(polar, -1.0, 1.0);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(radial * polar * azimuth));
  for (int i = 1; i <= radial; ++i) {
    const double r = max_radius * i / radial;
    for (int a = 0; a < polar; ++a) {
      const double c = rule.nodes[static_cast<std::size_t>(a)];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int b = 0; b < azimuth; ++b) {
        const double phi = kTwoPi * b / azimuth;
        out.emplace_back(r * s * std::cos(phi), r * s * std::sin(phi), r * c);
      }
    }
  }
  return out;
}

std::vector<Vec3> BallGrid::shell() const {
  auto all = points();
  const auto per_shell = static_cast<std::size_t>(polar * azimuth);
  return std::vector<Vec3>(all.end() - static_cast<std::ptrdiff_t>(per_shell), all.end());
}

HarnackMargin harnack_distance_margin(const std::function<Vec3(const Vec3&)>& h, const BallGrid& grid,
                                      const Ellipsoid& target) {
  auto signed_distance = [&](const Vec3& w) {
    const double d = target.distance(w);
    return target.contains(w) ? d : -d;
  };
  const double r0 = signed_distance(h(Vec3::Zero()));
  constexpr double kConstant = 0.25;  // 1 / 2^{n-1}, n = 3
  HarnackMargin out{std::numeric_limits<double>::infinity(), Vec3::Zero(), r0, kConstant, 0};
  for (const auto& x : grid.points()) {
    const double m = signed_distance(h(x)) - (1.0 - x.norm()) * r0 * kConstant;
    ++out.evaluations;
    if (m < out.margin) {
      out.margin = m;
      out.argmin = x;
    }
  }
  return out;
}

}  // namespace hmlab
