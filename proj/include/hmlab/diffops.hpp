#pragma once

#include <functional>
#include <vector>

#include "hmlab/core.hpp"

namespace hmlab {

using VectorField = std::function<VecX(const VecX&)>;
using ScalarField = std::function<double(const VecX&)>;

/// Central-difference Jacobian; with richardson the steps h and h/2 are
/// combined for O(h^4) error. Evaluation failures become EvaluationOutOfDomain.
MatX fd_jacobian(const VectorField& f, const VecX& x, double step = 1e-3, bool richardson = true);

struct DerivativeNorms {
  double max_stretch;  // largest singular value
  double min_stretch;  // smallest singular value
  double det;
};

/// Extreme singular values from the symmetric eigenproblem of m^T m.
std::pair<double, double> singular_extremes(const MatX& m);
DerivativeNorms derivative_norms(const MatX& m);

struct Distortion {
  double outer;  // Lambda^n / |J|
  double inner;  // |J| / lambda^n
};
Distortion distortion(const MatX& m);

/// |x|^{a-1} x.
VecX radial_map(double a, const VecX& x);
/// R(x, y) = |x|^{2a} + |y|^{2a} - |x|^{a+1}|y|^{a-1} - |x|^{a-1}|y|^{a+1}.
double radial_remainder(double a, const VecX& x, const VecX& y);
/// |x' - y'| - lambda^{(a-1)/2} |x|^{a-1} |x - y| with the points ordered so
/// that |y| = lambda |x|, lambda <= 1.
double radial_pair_margin(double a, const VecX& x, const VecX& y);

enum class MeanValueSense { Sub, Super };

struct MeanValueReport {
  double margin;  // worst over radii
  double worst_radius;
};
/// Sub: mean over the sphere - phi(x). Super: phi(x) - q * mean. Circles use
/// 128 points; 2-spheres a 16 x 32 Gauss-Legendre/trapezoid product.
MeanValueReport meanvalue_test(const ScalarField& phi, const VecX& x, const std::vector<double>& radii,
                               MeanValueSense sense, double q = 1.0);

/// Seven-point (or five-point) Laplacian with steps h, h/2 and Richardson.
double fd_laplacian(const ScalarField& phi, const VecX& x, double step = 1e-3);

/// exp of the mean of log J over B(x, d), divided by n inside the exponent.
double astala_gehring_a(const ScalarField& jacobian, const VecX& x, double d);

struct MeanJacobian {
  double value;            // (mean of J)^{1/n}
  double mean;             // mean of J
  std::size_t negative_cells;
};
/// Mean of the signed Jacobian over B(x, d/2).
MeanJacobian mean_jacobian(const ScalarField& jacobian, const VecX& x, double d);

}  // namespace hmlab
