#pragma once

#include <cstdint>
#include <vector>

#include "hmlab/claims.hpp"
#include "hmlab/random.hpp"

namespace hmlab {

/// Random strictly convex curve: curvature 1 + sum_j a_j cos(j s' + b_j) over
/// three harmonics with sum |a_j| <= 0.75, s' = 2 pi s / L, scaled by a
/// random length factor in [0.5, 2].
ConvexCurve random_convex_curve(Rng& rng, int samples = kDefaultCurveSamples);

/// Random speed profile 1 + sum_j c_j cos(j t + d_j), sum |c_j| <= 0.6.
std::vector<double> random_speed(Rng& rng, int samples = kDefaultBoundarySamples);

/// Self-map of the disk with boundary angle psi' = 1 + sum a_j cos(j t + phi_j),
/// j = 2, 4, 6 and sum |a_j| <= 0.9. Even harmonics give h(-z) = -h(z), so h(0) = 0.
DiskScenario random_self_map(Rng& rng, bool conjugate, PolarGrid grid = {});

struct Gallery {
  std::vector<DiskScenario> curves;     // Poisson extensions onto random convex curves
  std::vector<DiskScenario> self_maps;  // odd-symmetric univalent self-maps, every fifth conjugated
};

/// The self-map family alone; it draws from its own stream, so these are
/// the self_maps of make_gallery with the same count and seed.
std::vector<DiskScenario> self_map_gallery(int count, std::uint64_t seed, PolarGrid grid = {});

/// Reproducible from the seed alone: count members of each family.
Gallery make_gallery(int count, std::uint64_t seed, PolarGrid grid = {});

}  // namespace hmlab
