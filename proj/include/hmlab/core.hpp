#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hmlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Hall constant 27/(4 pi^2) for univalent harmonic self-maps of the disk fixing 0.
inline constexpr double kHallConstant = 27.0 / (4.0 * kPi * kPi);
/// Orientation-preserving Hall constant 3 sqrt(3) / (2 sqrt(2) pi).
inline const double kHallSigma0 = 3.0 * std::sqrt(3.0) / (2.0 * std::sqrt(2.0) * kPi);
/// Heinz lower bound 1/pi^2 for the Dirichlet energy density.
inline constexpr double kHeinzConstant = 1.0 / (kPi * kPi);

enum class ErrorCode {
  InvalidArgument,
  NonPositiveCurvature,
  TurningNumberMismatch,
  InvalidAxes,
  PointNotOnBoundary,
  PointOutside,
  NonPositiveSpeed,
  InvalidEpsilon,
  InsufficientSamples,
  OutsideDisk,
  OutsideOpenDisk,
  VanishingFz,
  NonPositiveJacobian,
  DegreeTooLarge,
  NotHarmonic,
  HessianTooSmall,
  OutsideBall,
  EvaluationOutOfDomain,
  SingularMatrix,
  OriginSingularity,
  OutOfDomain,
  NonConvexCurve,
  DegenerateSpeed,
  NonMonotoneInput,
  HypothesisUnverifiable,
  ParseError,
  UnknownClaim,
  UnknownField,
  NumericsError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Euclidean inner product of two plane vectors stored as complex numbers.
inline double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace hmlab
