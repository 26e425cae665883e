#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmlab/boundary.hpp"
#include "hmlab/curves.hpp"
#include "hmlab/harmonic2d.hpp"
#include "hmlab/harmonic3d.hpp"

namespace hmlab {

enum class Verdict { Pass, Fail, Unverifiable };
std::string_view to_string(Verdict v);

/// Outcome of one inequality check. margin is the worst LHS - RHS over the
/// evaluation set; it is empty when a hypothesis could not be certified.
struct ClaimReport {
  std::string id;
  std::optional<double> margin;
  std::vector<double> argmin;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Unverifiable;
  std::vector<std::pair<std::string, double>> parameters;
  std::size_t evaluations = 0;
  std::vector<std::string> notes;

  /// Unverifiable reports do not count as failures.
  bool pass() const { return verdict != Verdict::Fail; }
  double parameter(const std::string& name) const;
};

/// Harmonic map of the disk with whatever is known about its image.
struct DiskScenario {
  std::string name;
  DiskHarmonicMap map;
  /// Closure of h(D) when it is a known convex domain.
  std::optional<ConvexDomain2> domain;
  /// Boundary correspondence, when the map was built from one (carries the speeds).
  std::optional<BoundaryMap> boundary;
  /// The target is the unit disk centred at 0.
  bool unit_disk_target = false;
  PolarGrid grid;
  double tolerance = 1e-8;
  double fd_tolerance = 1e-5;
  std::uint64_t seed = 7;

  /// Scenario for w -> a w + b applied to the target (a != 0).
  DiskScenario transformed(cplx a, cplx b) const;
};

/// Gradient map of a harmonic polynomial on the unit ball.
struct BallScenario {
  std::string name;
  HarmonicPoly3 potential;
  BallGrid grid;
  double tolerance = 1e-8;
  std::uint64_t seed = 7;
};

/// Image of the unit ball under a gradient map whose Hessian is constant:
/// the ellipsoid {c + A x : |x| <= 1}. frame holds the eigenvectors of A.
struct LinearImage {
  Ellipsoid ellipsoid;
  Mat3 frame;
  Vec3 center;

  /// Distance from p to the boundary of the image (signed, negative outside).
  double distance(const Vec3& p) const;
};
std::optional<LinearImage> linear_gradient_image(const HarmonicPoly3& u);

/// Builders for the common scenario shapes.
DiskScenario scenario_from_boundary(std::string name, BoundaryMap map, PolarGrid grid = {});
DiskScenario scenario_from_polynomial(std::string name, std::vector<cplx> analytic,
                                      std::vector<cplx> coanalytic, PolarGrid grid = {});
DiskScenario identity_scenario(PolarGrid grid = {});

enum class ClaimTarget { Disk, Ball };
struct ClaimInfo {
  std::string id;
  ClaimTarget target;
  std::string summary;
};
const std::vector<ClaimInfo>& claim_catalog();
bool known_claim(const std::string& id);

/// Signed distance to the boundary of a convex domain, negative outside.
double signed_distance(const ConvexDomain2& dom, cplx w);

ClaimReport check_T11_distance(const DiskScenario& s);
ClaimReport check_T11_radial_normal(const DiskScenario& s);
ClaimReport check_T12_analytic_part(const DiskScenario& s);
ClaimReport check_hall(const DiskScenario& s);
ClaimReport check_T13_T15(const DiskScenario& s);
ClaimReport check_T17_rkc(const DiskScenario& s);
ClaimReport check_T18_diameter(const DiskScenario& s);
ClaimReport check_T19(const DiskScenario& s);
ClaimReport check_min_principle(const DiskScenario& s);
ClaimReport check_identities(const DiskScenario& s);
ClaimReport check_heinz_koebe(const DiskScenario& s);
ClaimReport check_weak_H_ratio(const DiskScenario& s);

ClaimReport check_T21_distance(const BallScenario& s);
ClaimReport check_min_principle(const BallScenario& s);
ClaimReport check_weak_H_ratio(const BallScenario& s);
ClaimReport check_lgw(const BallScenario& s);
ClaimReport check_cr_system(const BallScenario& s);

/// Runs the listed claims (all claims of the scenario kind when ids is empty).
/// Ids of the other kind come back unverifiable; unknown ids throw UnknownClaim.
std::vector<ClaimReport> run_claims(const DiskScenario& s, const std::vector<std::string>& ids = {},
                                    double tolerance_scale = 1.0);
std::vector<ClaimReport> run_claims(const BallScenario& s, const std::vector<std::string>& ids = {},
                                    double tolerance_scale = 1.0);

/// Hyperbolic density sandwich d <= 1/rho <= 8 d on the catalog domains
/// (disk, half-plane, strip, slit plane); worst of (1/rho)/d - 1 and 8 - (1/rho)/d.
struct DensitySandwich {
  double margin;
  double min_ratio;
  double max_ratio;
  std::size_t evaluations;
};
DensitySandwich hyperbolic_density_sandwich();

/// Koebe distortion d |f'| / d' over the conformal catalog (Moebius phi_b,
/// Koebe function, (1+z)/(1-z), (z-1)^2, sqrt(z+1)).
struct KoebeEntry {
  std::string name;
  double min_ratio;
  double max_ratio;
};
struct KoebeReport {
  std::vector<KoebeEntry> entries;
  double margin;  // worst of ratio - 1/4 and 4 - ratio
  std::size_t evaluations;
};
KoebeReport koebe_catalog();

/// phi_b(z) = (z - b) / (1 - conj(b) z) and its derivative.
cplx mobius(cplx b, cplx z);
cplx mobius_derivative(cplx b, cplx z);

}  // namespace hmlab
