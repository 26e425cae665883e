#include "hmlab/diffops.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "hmlab/harmonic3d.hpp"
#include "hmlab/quadrature.hpp"

namespace hmlab {

namespace {

VecX checked_eval(const VectorField& f, const VecX& x) {
  VecX v;
  try {
    v = f(x);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::EvaluationOutOfDomain, e.what());
  }
  if (!v.allFinite()) throw Error(ErrorCode::EvaluationOutOfDomain, "map returned a non-finite value");
  return v;
}

// Weighted nodes of a ball of radius d about x: radial Gauss-Legendre times angular grid.
struct BallRule {
  std::vector<VecX> points;
  std::vector<double> weights;
};

BallRule ball_rule(const VecX& x, double d) {
  BallRule rule;
  if (x.size() == 2) {
    const auto radial = gauss_legendre(32, 0.0, d);
    constexpr int kAngles = 128;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i)
      for (int j = 0; j < kAngles; ++j) {
        const double r = radial.nodes[i], t = kTwoPi * j / kAngles;
        VecX p = x;
        p[0] += r * std::cos(t);
        p[1] += r * std::sin(t);
        rule.points.push_back(p);
        rule.weights.push_back(radial.weights[i] * r * kTwoPi / kAngles);
      }
  } else if (x.size() == 3) {
    const auto radial = gauss_legendre(16, 0.0, d);
    const auto sphere = sphere_grid(32, 64);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i)
      for (std::size_t j = 0; j < sphere.nodes.size(); ++j) {
        const double r = radial.nodes[i];
        rule.points.push_back(x + r * VecX(sphere.nodes[j]));
        rule.weights.push_back(radial.weights[i] * r * r * sphere.weights[j]);
      }
  } else {
    throw Error(ErrorCode::InvalidArgument, "ball quadrature supports dimensions 2 and 3");
  }
  return rule;
}

double safe_scalar(const ScalarField& phi, const VecX& x) {
  double v = 0.0;
  try {
    v = phi(x);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::OutOfDomain, e.what());
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::OutOfDomain, "field is not finite on the sphere");
  return v;
}

}  // namespace

MatX fd_jacobian(const VectorField& f, const VecX& x, double step, bool richardson) {
  const VecX f0 = checked_eval(f, x);
  const auto n = x.size();
  MatX m(f0.size(), n);
  auto column = [&](Eigen::Index j, double h) {
    VecX xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    return VecX((checked_eval(f, xp) - checked_eval(f, xm)) / (2.0 * h));
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    if (richardson)
      m.col(j) = (4.0 * column(j, 0.5 * step) - column(j, step)) / 3.0;
    else
      m.col(j) = column(j, step);
  }
  return m;
}

std::pair<double, double> singular_extremes(const MatX& m) {
  Eigen::SelfAdjointEigenSolver<MatX> eig(m.transpose() * m, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();  // ascending
  return {std::sqrt(std::max(0.0, ev[ev.size() - 1])), std::sqrt(std::max(0.0, ev[0]))};
}

DerivativeNorms derivative_norms(const MatX& m) {
  const auto [big, small] = singular_extremes(m);
  return {big, small, m.rows() == m.cols() ? m.determinant() : std::numeric_limits<double>::quiet_NaN()};
}

Distortion distortion(const MatX& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "distortion needs a square matrix");
  const double det = std::abs(m.determinant());
  const auto [big, small] = singular_extremes(m);
  const double n = static_cast<double>(m.rows());
  if (!(det > 0.0) || !(small > 0.0)) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  return {std::pow(big, n) / det, det / std::pow(small, n)};
}

VecX radial_map(double a, const VecX& x) {
  const double r = x.norm();
  if (r == 0.0) {
    if (a < 1.0) throw Error(ErrorCode::OriginSingularity, "|x|^{a-1} x is singular at 0 for a < 1");
    return VecX::Zero(x.size());
  }
  return std::pow(r, a - 1.0) * x;
}

double radial_remainder(double a, const VecX& x, const VecX& y) {
  const double rx = x.norm(), ry = y.norm();
  return std::pow(rx, 2 * a) + std::pow(ry, 2 * a) - std::pow(rx, a + 1) * std::pow(ry, a - 1) -
         std::pow(rx, a - 1) * std::pow(ry, a + 1);
}

double radial_pair_margin(double a, const VecX& x, const VecX& y) {
  const bool swap = y.norm() > x.norm();
  const VecX& big = swap ? y : x;
  const VecX& small = swap ? x : y;
  const double rb = big.norm();
  if (rb == 0.0) return 0.0;
  const double lambda = small.norm() / rb;
  const double lhs = (radial_map(a, big) - radial_map(a, small)).norm();
  return lhs - std::pow(lambda, 0.5 * (a - 1.0)) * std::pow(rb, a - 1.0) * (big - small).norm();
}

MeanValueReport meanvalue_test(const ScalarField& phi, const VecX& x, const std::vector<double>& radii,
                               MeanValueSense sense, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in (0, 1]");
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radii given");
  const double center = safe_scalar(phi, x);
  MeanValueReport out{std::numeric_limits<double>::infinity(), radii.front()};
  const SphereGrid sphere = x.size() == 3 ? sphere_grid(16, 32) : SphereGrid{};
  for (double rho : radii) {
    double mean = 0.0;
    if (x.size() == 2) {
      constexpr int kPoints = 128;
      for (int j = 0; j < kPoints; ++j) {
        VecX p = x;
        p[0] += rho * std::cos(kTwoPi * j / kPoints);
        p[1] += rho * std::sin(kTwoPi * j / kPoints);
        mean += safe_scalar(phi, p);
      }
      mean /= kPoints;
    } else if (x.size() == 3) {
      for (std::size_t j = 0; j < sphere.nodes.size(); ++j)
        mean += sphere.weights[j] * safe_scalar(phi, x + rho * VecX(sphere.nodes[j]));
      mean /= 2.0 * kTwoPi;
    } else {
      throw Error(ErrorCode::InvalidArgument, "mean-value test supports dimensions 2 and 3");
    }
    const double margin = sense == MeanValueSense::Sub ? mean - center : center - q * mean;
    if (margin < out.margin) {
      out.margin = margin;
      out.worst_radius = rho;
    }
  }
  return out;
}

double fd_laplacian(const ScalarField& phi, const VecX& x, double step) {
  const double c = phi(x);
  auto lap = [&](double h) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      VecX p = x, m = x;
      p[k] += h;
      m[k] -= h;
      acc += phi(p) - 2.0 * c + phi(m);
    }
    return acc / (h * h);
  };
  return (4.0 * lap(0.5 * step) - lap(step)) / 3.0;
}

double astala_gehring_a(const ScalarField& jacobian, const VecX& x, double d) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  const auto rule = ball_rule(x, d);
  double acc = 0.0, volume = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double j = jacobian(rule.points[i]);
    if (!(j > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "J <= 0 inside the averaging ball");
    acc += rule.weights[i] * std::log(j);
    volume += rule.weights[i];
  }
  return std::exp(acc / (static_cast<double>(x.size()) * volume));
}

MeanJacobian mean_jacobian(const ScalarField& jacobian, const VecX& x, double d) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  const auto rule = ball_rule(x, 0.5 * d);
  double acc = 0.0, volume = 0.0;
  std::size_t negative = 0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double j = jacobian(rule.points[i]);
    if (j < 0.0) ++negative;
    acc += rule.weights[i] * j;
    volume += rule.weights[i];
  }
  const double mean = acc / volume;
  if (!(mean > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "mean Jacobian is not positive");
  return {std::pow(mean, 1.0 / static_cast<double>(x.size())), mean, negative};
}

}  // namespace hmlab
