#pragma once

#include <string>
#include <vector>

#include "hmlab/claims.hpp"

namespace hmlab {

inline constexpr double kCertificateRing = 1.0 - 1e-4;

/// Jacobian certificate for a Poisson extension onto a convex curve: J on a
/// ring just inside the circle, J on the scenario grid, and the two a-priori
/// lower bounds from curvature and speed constants.
struct Certificate {
  double ring_radius = kCertificateRing;
  double ring_min = 0.0;
  double interior_min = 0.0;
  cplx interior_argmin{};
  double curvature_bound = 0.0;  // k m^3 / (2 pi K M)
  double diameter_bound = 0.0;   // d m / (8 pi M)
  std::string applied_bound;     // id of the larger bound: "T17_rkc" or "T18_diameter"
  double applied_value = 0.0;
  double k = 0.0, big_k = 0.0, m = 0.0, big_m = 0.0, d = 0.0;
  double tolerance = 0.0;
  std::size_t evaluations = 0;
  /// Both minima positive and interior min >= ring min - tolerance.
  bool certified = false;
};

/// Needs a boundary map (NonConvexCurve otherwise, or when curvature is not
/// positive) with strictly positive speed (DegenerateSpeed).
Certificate certify(const DiskScenario& s);

struct HomotopyTrace {
  std::vector<double> lambda;
  std::vector<double> m;  // grid minimum of J for each lambda
  double max_jump = 0.0;
  std::vector<std::string> notes;
};

/// Blends the constant-speed schedule s0 (same start point as g) into g:
/// s = (1 - lambda) s0 + lambda s_g on P + 1 equally spaced lambdas in [0, 1],
/// and records the grid minimum of J for each extension. The endpoints are
/// the extensions of s0 and of g themselves.
HomotopyTrace homotopy_trace(const CurvePtr& curve, const BoundaryMap& g, int intervals, PolarGrid grid = {});

/// Grid minimum of J for the extension of a boundary map (the quantity traced above).
double jacobian_grid_min(const BoundaryMap& map, const PolarGrid& grid);

}  // namespace hmlab
