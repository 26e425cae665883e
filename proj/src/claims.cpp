#include "hmlab/claims.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hmlab/parallel.hpp"
#include "hmlab/random.hpp"

namespace hmlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unverifiable: return "unverifiable";
  }
  return "unverifiable";
}

double ClaimReport::parameter(const std::string& name) const {
  for (const auto& [key, value] : parameters)
    if (key == name) return value;
  throw Error(ErrorCode::InvalidArgument, "report " + id + " has no parameter " + name);
}

namespace {

constexpr double kCentredTolerance = 1e-9;

ClaimReport start(const std::string& id, double tolerance) {
  ClaimReport r;
  r.id = id;
  r.tolerance = tolerance;
  return r;
}

ClaimReport& settle(ClaimReport& r, double margin) {
  r.margin = margin;
  r.verdict = margin >= -r.tolerance ? Verdict::Pass : Verdict::Fail;
  return r;
}

ClaimReport unverifiable(ClaimReport r, std::string why) {
  r.margin.reset();
  r.verdict = Verdict::Unverifiable;
  r.notes.push_back(std::move(why));
  return r;
}

std::vector<double> as_point(cplx z) { return {z.real(), z.imag()}; }
std::vector<double> as_point(const Vec3& p) { return {p.x(), p.y(), p.z()}; }

struct GridMin {
  double value;
  cplx at;
  std::size_t count;
};

GridMin grid_min(const PolarGrid& grid, const std::function<double(cplx)>& fn) {
  const auto values = sample_grid(grid, fn);
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorCode::NumericsError, "non-finite value in grid sweep");
  const std::size_t i = argmin_index(values);
  return {values[i], grid.point(i), values.size()};
}

template <class Fn>
std::vector<double> sample_points(const std::vector<Vec3>& pts, Fn&& fn) {
  std::vector<double> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = fn(pts[i]); });
  for (double v : out)
    if (!std::isfinite(v)) throw Error(ErrorCode::NumericsError, "non-finite value in ball sweep");
  return out;
}

double domain_scale(const DiskScenario& s) { return s.domain ? diameter(*s.domain) : 1.0; }

bool orientation_preserving(const DiskScenario& s) { return jacobian(s.map, cplx{}) > 0.0; }

/// The map made orientation preserving, when that keeps the target known.
std::optional<DiskHarmonicMap> oriented_map(const DiskScenario& s) {
  if (orientation_preserving(s)) return s.map;
  if (!s.domain || s.unit_disk_target) return s.map.conjugated();
  return std::nullopt;
}

/// Inradius about h(0); empty when h(0) is not strictly inside.
std::optional<double> centre_inradius(const DiskScenario& s) {
  const double r0 = signed_distance(*s.domain, eval(s.map, cplx{}));
  if (!(r0 > 0.0)) return std::nullopt;
  return r0;
}

bool centred(const DiskScenario& s) {
  return std::abs(eval(s.map, cplx{})) <= kCentredTolerance * domain_scale(s);
}

double hyperbolic_ratio_slit(cplx w) {
  const cplx root = std::sqrt(w);
  const double inv_density = 4.0 * std::abs(root) * root.real();
  const double d = w.real() >= 0.0 ? std::abs(w) : std::abs(w.imag());
  return inv_density / d;
}

/// Scenario margin, replaced by the catalog margin only when the catalog fails.
double with_catalog(double scenario, double catalog, double tolerance) {
  return catalog < -tolerance ? catalog : scenario;
}

double polyline_distance(const std::vector<cplx>& poly, cplx w) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const cplx a = poly[i];
    const cplx b = poly[(i + 1) % poly.size()];
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    const double t = len2 > 0.0 ? std::clamp(dot(w - a, ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(w - (a + t * ab)));
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario plumbing

double LinearImage::distance(const Vec3& p) const {
  const Vec3 q = frame.transpose() * (p - center);
  const double d = ellipsoid.distance(q);
  return ellipsoid.contains(q) ? d : -d;
}

std::optional<LinearImage> linear_gradient_image(const HarmonicPoly3& u) {
  const Poly3& p = u.poly();
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; i + j <= p.degree(); ++j)
      for (int k = 0; i + j + k <= p.degree(); ++k)
        if (i + j + k > 2 && p.coeff(i, j, k) != 0.0) return std::nullopt;
  const Mat3 a = hessian(u, Vec3::Zero());
  Eigen::SelfAdjointEigenSolver<Mat3> eig(a);
  const Vec3 axes = eig.eigenvalues().cwiseAbs();
  if (!(axes.minCoeff() > 1e-12 * std::max(1.0, axes.maxCoeff()))) return std::nullopt;
  const auto grad = gradient_map(u);
  return LinearImage{Ellipsoid(axes), eig.eigenvectors(), grad(Vec3::Zero())};
}

DiskScenario DiskScenario::transformed(cplx a, cplx b) const {
  if (!(std::abs(a) > 0.0)) throw Error(ErrorCode::InvalidArgument, "degenerate similarity");
  DiskScenario out = *this;
  out.map = map.affine_image(a, b);
  const double scale = std::abs(a);
  if (domain) {
    auto curve = std::make_shared<const ConvexCurve>(domain->boundary->transformed(a, b));
    out.domain = ConvexDomain2(curve, a * domain->interior_point + b);
    if (boundary) {
      std::vector<double> schedule(boundary->schedule().begin(), boundary->schedule().end());
      std::vector<double> speeds(boundary->speeds().begin(), boundary->speeds().end());
      for (auto& x : schedule) x *= scale;
      for (auto& x : speeds) x *= scale;
      out.boundary = BoundaryMap::from_schedule(curve, std::move(schedule), std::move(speeds),
                                                boundary->increment() * scale, boundary->modes());
    }
  } else {
    out.boundary.reset();
  }
  out.unit_disk_target = unit_disk_target && scale == 1.0 && b == cplx{};
  return out;
}

DiskScenario scenario_from_boundary(std::string name, BoundaryMap map, PolarGrid grid) {
  DiskScenario s;
  s.name = std::move(name);
  s.map = extend(map);
  s.domain = ConvexDomain2(map.curve_ptr());
  s.boundary = std::move(map);
  s.grid = grid;
  return s;
}

DiskScenario scenario_from_polynomial(std::string name, std::vector<cplx> analytic,
                                      std::vector<cplx> coanalytic, PolarGrid grid) {
  const std::size_t n = std::max<std::size_t>({analytic.size(), coanalytic.size(), 2}) - 1;
  analytic.resize(n + 1);
  coanalytic.resize(n + 1);
  std::vector<cplx> c(2 * n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[n + k] = analytic[k];
  for (std::size_t k = 1; k <= n; ++k) c[n - k] = std::conj(coanalytic[k]);
  c[n] += std::conj(coanalytic[0]);

  DiskScenario s;
  s.name = std::move(name);
  s.map = DiskHarmonicMap(std::move(c));
  s.grid = grid;
  const SeriesPair series(analytic, coanalytic);
  ParametricCurve param{
      [series](double t) { return series.value(std::polar(1.0, t)); },
      [series](double t) {
        const cplx z = std::polar(1.0, t);
        const auto j = series.jet(z);
        return cplx(0.0, 1.0) * (z * j.f1 - std::conj(z * j.g1));
      },
      [series](double t) {
        const cplx z = std::polar(1.0, t);
        const auto j = series.jet(z);
        return -(z * j.f1 + z * z * j.f2) - std::conj(z * j.g1 + z * z * j.g2);
      },
  };
  if (jacobian(s.map, cplx{}) < 0.0) {
    // The boundary runs clockwise; trace it as t -> -t, the boundary of h(conj z).
    param = {[f = param.z](double t) { return f(-t); }, [f = param.dz](double t) { return -f(-t); },
             [f = param.ddz](double t) { return f(-t); }};
  }
  auto map = boundary_from_parametric(param);
  s.domain = ConvexDomain2(map.curve_ptr(), eval(s.map, cplx{}));
  s.boundary = std::move(map);
  return s;
}

DiskScenario identity_scenario(PolarGrid grid) {
  auto s = scenario_from_polynomial("identity", {0.0, 1.0}, {}, grid);
  s.unit_disk_target = true;
  return s;
}

double signed_distance(const ConvexDomain2& dom, cplx w) {
  const auto foot = nearest_boundary_point(dom, w);
  const cplx tangent = dom.boundary->tangent_at(foot.arc);
  // Counterclockwise boundary: the interior lies to the left of the tangent.
  const double side = (std::conj(tangent) * (w - foot.point)).imag();
  return side >= 0.0 ? foot.distance : -foot.distance;
}

const std::vector<ClaimInfo>& claim_catalog() {
  static const std::vector<ClaimInfo> catalog{
      {"T11_distance", ClaimTarget::Disk, "d(h(z), boundary) >= (1 - |z|) R0 / 2"},
      {"T11_radial_normal", ClaimTarget::Disk, "(h_r, n) >= R0 / 2 and |(h_r, N)| >= (R0 / 2)|N| on the circle"},
      {"T12_analytic_part", ClaimTarget::Disk, "|f'| >= R0 / 4 and lambda_h >= (1 - k) R0 / 4"},
      {"hall", ClaimTarget::Disk, "|a1|^2 + |b1|^2 >= 27 / (4 pi^2), |a1| >= sigma0"},
      {"T13_T15", ClaimTarget::Disk, "d |h_z| / d_* >= sigma0 / 4, density sandwich d <= 1/rho <= 8 d"},
      {"T17_rkc", ClaimTarget::Disk, "J >= k m^3 / (2 pi K M)"},
      {"T18_diameter", ClaimTarget::Disk, "J >= d m / (8 pi M)"},
      {"T19", ClaimTarget::Disk, "J >= m dist(0, boundary) / 2 when h(0) = 0"},
      {"min_principle", ClaimTarget::Disk, "inf of J over the disk is attained on its rim"},
      {"identities", ClaimTarget::Disk, "J_z, (ln J)_{z zbar} and (1/J)_{z zbar} identities"},
      {"heinz_koebe", ClaimTarget::Disk, "D(h) >= 1/pi^2, D(h) >= R0^2 / 16, Koebe distortion in [1/4, 4]"},
      {"weak_H_ratio", ClaimTarget::Disk, "inf d Lambda / d_* (reported)"},
      {"T21_distance", ClaimTarget::Ball, "d(h(x), boundary) >= (1 - |x|) R0 / 4"},
      {"min_principle", ClaimTarget::Ball, "inf of |H| over the ball is attained on its rim"},
      {"weak_H_ratio", ClaimTarget::Ball, "inf d Lambda / d_* (reported)"},
      {"lgw", ClaimTarget::Ball, "Laplacian of ln|H| <= 0"},
      {"cr_system", ClaimTarget::Ball, "gradient map Jacobian symmetric and traceless"},
  };
  return catalog;
}

bool known_claim(const std::string& id) {
  const auto& cat = claim_catalog();
  return std::any_of(cat.begin(), cat.end(), [&](const ClaimInfo& c) { return c.id == id; });
}

// ---------------------------------------------------------------------------
// Catalog checks independent of the scenario

DensitySandwich hyperbolic_density_sandwich() {
  std::vector<double> ratios;
  for (int i = 0; i <= 64; ++i) {
    const double r = 0.99 * i / 64.0;
    ratios.push_back((1.0 - r * r) / (1.0 - r));  // disk, rho = 1 / (1 - |z|^2)
  }
  for (int i = 1; i <= 32; ++i) ratios.push_back(2.0);  // half-plane, rho = 1 / (2 Im w)
  for (int i = -31; i <= 31; ++i) {
    const double y = 0.5 * kPi * i / 32.0;  // strip |Im w| < pi/2, rho = 1 / (2 cos y)
    ratios.push_back(2.0 * std::cos(y) / (0.5 * kPi - std::abs(y)));
  }
  for (int i = 0; i < 8; ++i)
    for (int j = -31; j <= 31; ++j) {
      const double radius = std::pow(10.0, -1.0 + 2.0 * i / 7.0);
      ratios.push_back(hyperbolic_ratio_slit(std::polar(radius, kPi * j / 32.0)));
    }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  return {std::min(*lo - 1.0, 8.0 - *hi), *lo, *hi, ratios.size()};
}

cplx mobius(cplx b, cplx z) { return (z - b) / (1.0 - std::conj(b) * z); }
cplx mobius_derivative(cplx b, cplx z) {
  const cplx den = 1.0 - std::conj(b) * z;
  return (1.0 - std::norm(b)) / (den * den);
}

namespace {

KoebeReport build_koebe_catalog() {
  struct Entry {
    std::string name;
    std::function<cplx(cplx)> f;
    std::function<cplx(cplx)> df;
    std::function<double(cplx)> dist;
  };
  auto trace = [](const std::function<cplx(cplx)>& f) {
    std::vector<cplx> poly(20000);
    for (std::size_t i = 0; i < poly.size(); ++i)
      poly[i] = f(std::polar(1.0, -kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(poly.size())));
    return poly;
  };
  const cplx b(0.5, 0.0);
  auto cardioid = [](cplx z) { return (z - 1.0) * (z - 1.0); };
  auto root = [](cplx z) { return std::sqrt(z + 1.0); };
  const auto cardioid_edge = trace(cardioid);
  const auto root_edge = trace(root);
  const std::vector<Entry> catalog{
      {"mobius_0.5", [b](cplx z) { return mobius(b, z); }, [b](cplx z) { return mobius_derivative(b, z); },
       [](cplx w) { return 1.0 - std::abs(w); }},
      {"koebe", [](cplx z) { return z / ((1.0 - z) * (1.0 - z)); },
       [](cplx z) { return (1.0 + z) / std::pow(1.0 - z, 3); },
       [](cplx w) { return w.real() >= -0.25 ? std::abs(w + 0.25) : std::abs(w.imag()); }},
      {"half_plane", [](cplx z) { return (1.0 + z) / (1.0 - z); },
       [](cplx z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }, [](cplx w) { return w.real(); }},
      {"cardioid", cardioid, [](cplx z) { return 2.0 * (z - 1.0); },
       [&](cplx w) { return polyline_distance(cardioid_edge, w); }},
      {"sqrt_shift", root, [](cplx z) { return 0.5 / std::sqrt(z + 1.0); },
       [&](cplx w) { return polyline_distance(root_edge, w); }},
  };

  const PolarGrid grid{16, 32, 0.95};
  KoebeReport out{{}, std::numeric_limits<double>::infinity(), 0};
  for (const auto& e : catalog) {
    std::vector<double> ratio(grid.size() + 1);
    parallel_for(ratio.size(), [&](std::size_t i) {
      const cplx z = i == 0 ? cplx{} : grid.point(i - 1);
      ratio[i] = (1.0 - std::abs(z)) * std::abs(e.df(z)) / e.dist(e.f(z));
    });
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    out.entries.push_back({e.name, *lo, *hi});
    out.margin = std::min({out.margin, *lo - 0.25, 4.0 - *hi});
    out.evaluations += ratio.size();
  }
  return out;
}

}  // namespace

KoebeReport koebe_catalog() {
  static const KoebeReport cached = build_koebe_catalog();
  return cached;
}

// ---------------------------------------------------------------------------
// Disk claims

ClaimReport check_T11_distance(const DiskScenario& s) {
  auto r = start("T11_distance", s.tolerance);
  if (!s.domain) return unverifiable(r, "image domain unknown");
  const auto r0 = centre_inradius(s);
  if (!r0) return unverifiable(r, "h(0) is not inside the target");
  const auto m = grid_min(s.grid, [&](cplx z) {
    return signed_distance(*s.domain, eval(s.map, z)) - (1.0 - std::abs(z)) * *r0 / 2.0;
  });
  r.argmin = as_point(m.at);
  r.evaluations = m.count;
  r.parameters = {{"R0", *r0}, {"constant", 0.5}, {"max_radius", s.grid.max_radius}};
  return settle(r, m.value);
}

ClaimReport check_T11_radial_normal(const DiskScenario& s) {
  auto r = start("T11_radial_normal", s.tolerance);
  if (!s.domain) return unverifiable(r, "image domain unknown");
  const auto r0 = centre_inradius(s);
  if (!r0) return unverifiable(r, "h(0) is not inside the target");
  const double radius = kAbelRadius;
  const int n = s.grid.angular;
  std::vector<double> normal(static_cast<std::size_t>(n)), polar(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    const double theta = kTwoPi * static_cast<double>(j) / n;
    const cplx z = std::polar(radius, theta);
    const auto jet = s.map.jet(z);
    const cplx hr = radial_derivative(s.map, radius, theta);
    const auto foot = nearest_boundary_point(*s.domain, jet.value());
    const cplx t = s.domain->boundary->tangent_at(foot.arc);
    const cplx outward = cplx(0.0, -1.0) * t / std::abs(t);
    const cplx htheta = cplx(0.0, 1.0) * (z * jet.f1 - std::conj(z * jet.g1));
    const cplx big_n = cplx(0.0, 1.0) * htheta;
    normal[j] = dot(hr, outward) - *r0 / 2.0;
    polar[j] = std::abs(dot(hr, big_n)) / std::abs(big_n) - *r0 / 2.0;
  });
  const std::size_t in = argmin_index(normal), ip = argmin_index(polar);
  const bool normal_worse = normal[in] <= polar[ip];
  const double theta = kTwoPi * static_cast<double>(normal_worse ? in : ip) / n;
  r.argmin = as_point(std::polar(1.0, theta));
  r.evaluations = 2 * static_cast<std::size_t>(n);
  r.parameters = {{"R0", *r0},
                  {"constant", 0.5},
                  {"abel_radius", radius},
                  {"normal_margin", normal[in]},
                  {"polar_jacobian_margin", polar[ip]}};
  r.notes.push_back("n is the outward unit normal at h(zeta); radial limits taken at r = 1 - 1e-6");
  return settle(r, std::min(normal[in], polar[ip]));
}

ClaimReport check_T12_analytic_part(const DiskScenario& s) {
  auto r = start("T12_analytic_part", s.tolerance);
  if (!s.domain) return unverifiable(r, "image domain unknown");
  const auto r0 = centre_inradius(s);
  if (!r0) return unverifiable(r, "h(0) is not inside the target");
  const bool op = orientation_preserving(s);
  auto parts = [&](cplx z) {
    const auto [hz, hzbar] = wirtinger(s.map, z);
    return op ? std::pair{std::abs(hz), std::abs(hzbar)} : std::pair{std::abs(hzbar), std::abs(hz)};
  };
  const auto analytic = grid_min(s.grid, [&](cplx z) { return parts(z).first - *r0 / 4.0; });
  const auto ratio = sample_grid(s.grid, [&](cplx z) {
    const auto [a, b] = parts(z);
    return b / a;
  });
  const double k = *std::max_element(ratio.begin(), ratio.end());
  r.parameters = {{"R0", *r0}, {"constant", 0.25}, {"k", k}, {"analytic_margin", analytic.value}};
  r.evaluations = 2 * analytic.count;
  double margin = analytic.value;
  cplx at = analytic.at;
  if (k < 1.0) {
    const auto qc = grid_min(s.grid, [&](cplx z) {
      const auto [a, b] = parts(z);
      return (a - b) - (1.0 - k) * *r0 / 4.0;
    });
    r.parameters.emplace_back("qc_margin", qc.value);
    r.evaluations += qc.count;
    if (qc.value < margin) {
      margin = qc.value;
      at = qc.at;
    }
  } else {
    r.notes.push_back("second dilatation reaches 1 on the grid; qc form skipped");
  }
  if (!op) r.notes.push_back("orientation-reversing map: roles of h_z and h_zbar swapped");
  r.argmin = as_point(at);
  return settle(r, margin);
}

ClaimReport check_hall(const DiskScenario& s) {
  auto r = start("hall", s.tolerance);
  if (!s.unit_disk_target) return unverifiable(r, "not a self-map of the unit disk");
  if (!centred(s)) return unverifiable(r, "h(0) != 0");
  const auto q = hall_quantities(s.map);
  const bool op = orientation_preserving(s);
  double margin = q.energy - kHallConstant;
  r.parameters = {{"c0", kHallConstant}, {"energy", q.energy}, {"a1", q.analytic_one}};
  if (op) {
    margin = std::min(margin, q.analytic_one - kHallSigma0);
    r.parameters.emplace_back("sigma0", kHallSigma0);
  } else {
    r.notes.push_back("orientation-reversing: sigma0 bound not applied");
  }
  r.argmin = as_point(cplx{});
  r.evaluations = 1;
  return settle(r, margin);
}

ClaimReport check_T13_T15(const DiskScenario& s) {
  auto r = start("T13_T15", s.tolerance);
  const auto sandwich = hyperbolic_density_sandwich();
  if (!s.domain) return unverifiable(r, "image domain unknown");
  const bool op = orientation_preserving(s);
  const auto hyp = grid_min(s.grid, [&](cplx z) {
    const auto jet = s.map.jet(z);
    const double d = 1.0 - std::abs(z);
    const double dstar = signed_distance(*s.domain, jet.value());
    return d * std::abs(op ? jet.f1 : jet.g1) / dstar;
  });
  const auto stretch = grid_min(s.grid, [&](cplx z) {
    const auto jet = s.map.jet(z);
    return (1.0 - std::abs(z)) * (std::abs(jet.f1) + std::abs(jet.g1)) /
           signed_distance(*s.domain, jet.value());
  });
  const double iv2 = hyp.value - kHallSigma0 / 4.0;
  r.parameters = {{"sigma0", kHallSigma0},
                  {"constant", kHallSigma0 / 4.0},
                  {"hyperbolic_derivative_min", hyp.value},
                  {"stretch_ratio_min", stretch.value},
                  {"density_ratio_min", sandwich.min_ratio},
                  {"density_ratio_max", sandwich.max_ratio},
                  {"density_margin", sandwich.margin}};
  r.evaluations = hyp.count + stretch.count + sandwich.evaluations;
  r.argmin = as_point(hyp.at);
  r.notes.push_back("stretch ratio d Lambda / d_* is reported without a constant");
  return settle(r, with_catalog(iv2, sandwich.margin, r.tolerance));
}

namespace {

struct JacobianSweep {
  GridMin min;
  std::optional<DiskHarmonicMap> map;
};

JacobianSweep oriented_jacobian_min(const DiskScenario& s) {
  auto map = oriented_map(s);
  if (!map) return {{0.0, {}, 0}, std::nullopt};
  const auto m = grid_min(s.grid, [&](cplx z) { return jacobian(*map, z); });
  return {m, std::move(map)};
}

}  // namespace

ClaimReport check_T17_rkc(const DiskScenario& s) {
  auto r = start("T17_rkc", s.tolerance);
  if (!s.boundary) return unverifiable(r, "no boundary speed profile");
  const auto [k, big_k] = s.boundary->curve().curvature_range();
  const double m = s.boundary->min_speed(), big_m = s.boundary->max_speed();
  if (!(m > 0.0)) return unverifiable(r, "speed profile is not strictly positive");
  const auto sweep = oriented_jacobian_min(s);
  if (!sweep.map) return unverifiable(r, "orientation-reversing map onto a general target");
  const double bound = k * m * m * m / (kTwoPi * big_k * big_m);
  r.parameters = {{"k", k}, {"K", big_k}, {"m", m}, {"M", big_m}, {"bound", bound}, {"min_J", sweep.min.value}};
  r.argmin = as_point(sweep.min.at);
  r.evaluations = sweep.min.count;
  return settle(r, sweep.min.value - bound);
}

ClaimReport check_T18_diameter(const DiskScenario& s) {
  auto r = start("T18_diameter", s.tolerance);
  if (!s.boundary || !s.domain) return unverifiable(r, "no boundary speed profile");
  const double m = s.boundary->min_speed(), big_m = s.boundary->max_speed();
  if (!(m > 0.0)) return unverifiable(r, "speed profile is not strictly positive");
  const auto sweep = oriented_jacobian_min(s);
  if (!sweep.map) return unverifiable(r, "orientation-reversing map onto a general target");
  const double d = diameter(*s.domain);
  const double bound = d * m / (8.0 * kPi * big_m);
  r.parameters = {{"d", d}, {"m", m}, {"M", big_m}, {"bound", bound}, {"min_J", sweep.min.value}};
  r.argmin = as_point(sweep.min.at);
  r.evaluations = sweep.min.count;
  return settle(r, sweep.min.value - bound);
}

ClaimReport check_T19(const DiskScenario& s) {
  auto r = start("T19", s.tolerance);
  if (!s.boundary || !s.domain) return unverifiable(r, "no boundary speed profile");
  if (!centred(s)) return unverifiable(r, "scenario is not normalized to h(0) = 0");
  const double m = s.boundary->min_speed();
  const auto sweep = oriented_jacobian_min(s);
  if (!sweep.map) return unverifiable(r, "orientation-reversing map onto a general target");
  const double dist0 = signed_distance(*s.domain, cplx{});
  const double bound = m * dist0 / 2.0;
  r.parameters = {{"m", m}, {"dist0", dist0}, {"bound", bound}, {"min_J", sweep.min.value}};
  r.argmin = as_point(sweep.min.at);
  r.evaluations = sweep.min.count;
  r.notes.push_back("strict inequality checked as >= with tolerance");
  return settle(r, sweep.min.value - bound);
}

ClaimReport check_min_principle(const DiskScenario& s) {
  auto r = start("min_principle", s.tolerance);
  const auto map = oriented_map(s);
  if (!map) return unverifiable(r, "orientation-reversing map onto a general target");
  const auto values = sample_grid(s.grid, [&](cplx z) { return jacobian(*map, z); });
  r.evaluations = values.size();
  if (*std::min_element(values.begin(), values.end()) <= 0.0)
    return unverifiable(r, "J is not positive on the grid");
  const auto ring_begin = values.end() - s.grid.angular;
  const auto inner = std::min_element(values.begin(), ring_begin);
  const auto ring = std::min_element(ring_begin, values.end());
  const auto top = std::max_element(values.begin(), values.end());
  r.argmin = as_point(s.grid.point(static_cast<std::size_t>(inner - values.begin())));
  const cplx top_at = s.grid.point(static_cast<std::size_t>(top - values.begin()));
  r.parameters = {{"interior_min", *inner}, {"ring_min", *ring}, {"ring_radius", s.grid.max_radius},
                  {"max_J", *top},          {"max_J_x", top_at.real()}, {"max_J_y", top_at.imag()}};
  r.notes.push_back("maximum principle is not asserted");
  return settle(r, *inner - *ring);
}

ClaimReport check_identities(const DiskScenario& s) {
  auto r = start("identities", s.tolerance);
  const auto map = oriented_map(s);
  if (!map) return unverifiable(r, "orientation-reversing map onto a general target");
  constexpr int kPoints = 100;
  Rng rng(s.seed);
  std::vector<cplx> pts(kPoints);
  for (auto& z : pts) {
    const double rad = 0.9 * std::sqrt(rng.uniform());
    z = std::polar(rad, kTwoPi * rng.uniform());
  }
  std::vector<double> r3(kPoints, 0.0), r6(kPoints, 0.0), r7(kPoints, 0.0);
  std::vector<char> used(kPoints, 0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const cplx z = pts[i];
    const auto jet = map->jet(z);
    const double j = jet.jacobian();
    if (!(j > 0.0)) return;
    used[i] = 1;
    const auto [fd, series] = jacobian_z_check(*map, z);
    // Residuals are relative to the size of the terms on the series side,
    // floored by the energy density so affine maps do not divide by zero.
    const double energy = std::norm(jet.f1) + std::norm(jet.g1);
    const double first = std::abs(jet.f1) * std::abs(jet.f2) + std::abs(jet.g1) * std::abs(jet.g2);
    r3[i] = std::abs(fd - series) / std::max({std::abs(series), first, energy});
    const double second = energy * (std::norm(jet.f2) + std::norm(jet.g2));
    const auto i7 = log_jacobian_curvature(*map, z);
    r7[i] = std::abs(i7.lhs - i7.rhs) / std::max({std::abs(i7.rhs), second, energy * energy});
    const auto i6 = reciprocal_jacobian_curvature(*map, z);
    r6[i] = std::abs(i6.lhs - i6.rhs) / std::max({std::abs(i6.rhs), j * second, j * energy * energy});
  });
  const std::size_t skipped = static_cast<std::size_t>(std::count(used.begin(), used.end(), 0));
  const double thr3 = 1e-7 * s.fd_tolerance / 1e-5;
  const double thr = s.fd_tolerance;
  const std::size_t i3 = static_cast<std::size_t>(std::max_element(r3.begin(), r3.end()) - r3.begin());
  const std::size_t i6 = static_cast<std::size_t>(std::max_element(r6.begin(), r6.end()) - r6.begin());
  const std::size_t i7 = static_cast<std::size_t>(std::max_element(r7.begin(), r7.end()) - r7.begin());
  const double m3 = thr3 - r3[i3], m6 = thr - r6[i6], m7 = thr - r7[i7];
  const double margin = std::min({m3, m6, m7});
  const std::size_t worst = margin == m3 ? i3 : (margin == m6 ? i6 : i7);
  r.argmin = as_point(pts[worst]);
  r.evaluations = 3 * (pts.size() - skipped);
  r.parameters = {{"jz_residual", r3[i3]},         {"jz_threshold", thr3},
                  {"reciprocal_residual", r6[i6]}, {"log_residual", r7[i7]},
                  {"fd_threshold", thr},           {"skipped_points", static_cast<double>(skipped)}};
  r.notes.push_back("(1/J)_{z zbar} J^3 = 2|J_z|^2 - J J_{z zbar}; -(ln J)_{z zbar} J^2 = |f'g'' - g'f''|^2");
  if (skipped == pts.size()) return unverifiable(r, "J is not positive at any sample point");
  return settle(r, margin);
}

ClaimReport check_heinz_koebe(const DiskScenario& s) {
  auto r = start("heinz_koebe", s.tolerance);
  const auto koebe = koebe_catalog();
  const auto energy = grid_min(s.grid, [&](cplx z) { return heinz_energy(s.map, z); });
  double margin = std::numeric_limits<double>::infinity();
  cplx at = energy.at;
  r.parameters = {{"min_D", energy.value}, {"koebe_margin", koebe.margin}};
  for (const auto& e : koebe.entries) {
    r.parameters.emplace_back("koebe_" + e.name + "_min", e.min_ratio);
    r.parameters.emplace_back("koebe_" + e.name + "_max", e.max_ratio);
  }
  r.parameters.emplace_back("mobius_0.5_derivative_at_0", std::abs(mobius_derivative(cplx(0.5, 0.0), cplx{})));
  // (z - 1)^2 is univalent but |f'| -> 0 at z = 1: not co-Lipschitz.
  r.parameters.emplace_back("cardioid_derivative_at_1-1e-6", std::abs(2.0 * (cplx(1.0 - 1e-6, 0.0) - 1.0)));
  r.evaluations = energy.count + koebe.evaluations;
  if (s.unit_disk_target && centred(s)) {
    const double heinz = energy.value - kHeinzConstant;
    r.parameters.emplace_back("heinz_margin", heinz);
    margin = std::min(margin, heinz);
  } else {
    r.notes.push_back("Heinz bound skipped: not a centred self-map of the disk");
  }
  if (s.domain) {
    if (const auto r0 = centre_inradius(s)) {
      const double t43 = energy.value - *r0 * *r0 / 16.0;
      r.parameters.emplace_back("R0", *r0);
      r.parameters.emplace_back("energy_inradius_margin", t43);
      margin = std::min(margin, t43);
    }
  }
  r.argmin = as_point(at);
  if (!std::isfinite(margin)) return unverifiable(r, "neither a centred self-map nor a known target");
  return settle(r, with_catalog(margin, koebe.margin, r.tolerance));
}

ClaimReport check_weak_H_ratio(const DiskScenario& s) {
  auto r = start("weak_H_ratio", s.tolerance);
  if (!s.domain) return unverifiable(r, "image domain unknown");
  const auto m = grid_min(s.grid, [&](cplx z) {
    const auto jet = s.map.jet(z);
    return (1.0 - std::abs(z)) * (std::abs(jet.f1) + std::abs(jet.g1)) / signed_distance(*s.domain, jet.value());
  });
  r.argmin = as_point(m.at);
  r.evaluations = m.count;
  r.parameters = {{"ratio_inf", m.value}};
  r.notes.push_back("observational: the margin is the infimum of the ratio itself");
  return settle(r, m.value);
}

// ---------------------------------------------------------------------------
// Ball claims

ClaimReport check_T21_distance(const BallScenario& s) {
  auto r = start("T21_distance", s.tolerance);
  const auto image = linear_gradient_image(s.potential);
  if (!image) return unverifiable(r, "image of the ball is only known for quadratic potentials");
  const auto grad = gradient_map(s.potential);
  const auto res = harnack_distance_margin(
      [&](const Vec3& x) -> Vec3 { return image->frame.transpose() * (grad(x) - image->center); }, s.grid,
      image->ellipsoid);
  if (!(res.inradius > 0.0)) return unverifiable(r, "h(0) is not inside the image");
  r.argmin = as_point(res.argmin);
  r.evaluations = res.evaluations;
  r.parameters = {{"R0", res.inradius}, {"constant", res.constant}};
  return settle(r, res.margin);
}

ClaimReport check_min_principle(const BallScenario& s) {
  auto r = start("min_principle", s.tolerance);
  const auto pts = s.grid.points();
  const auto values = sample_points(pts, [&](const Vec3& p) { return hessian_det(s.potential, p); });
  r.evaluations = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0) && !(*hi < 0.0)) return unverifiable(r, "H changes sign or vanishes on the grid");
  const double sign = *lo > 0.0 ? 1.0 : -1.0;
  const auto shell = static_cast<std::size_t>(s.grid.polar * s.grid.azimuth);
  double inner = std::numeric_limits<double>::infinity(), ring = inner;
  std::size_t at = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = sign * values[i];
    if (i + shell >= values.size()) {
      ring = std::min(ring, v);
    } else if (v < inner) {
      inner = v;
      at = i;
    }
  }
  r.argmin = as_point(pts[at]);
  r.parameters = {{"interior_min", inner}, {"ring_min", ring}, {"sign", sign}};
  if (sign < 0.0) r.notes.push_back("H < 0 throughout; checked on |H|");
  return settle(r, inner - ring);
}

ClaimReport check_weak_H_ratio(const BallScenario& s) {
  auto r = start("weak_H_ratio", s.tolerance);
  const auto image = linear_gradient_image(s.potential);
  if (!image) return unverifiable(r, "image of the ball is only known for quadratic potentials");
  const auto grad = gradient_map(s.potential);
  const auto pts = s.grid.points();
  const auto values = sample_points(pts, [&](const Vec3& p) {
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(hessian(s.potential, p), Eigen::EigenvaluesOnly);
    const double stretch = eig.eigenvalues().cwiseAbs().maxCoeff();
    return (1.0 - p.norm()) * stretch / image->distance(grad(p));
  });
  const std::size_t i = argmin_index(values);
  r.argmin = as_point(pts[i]);
  r.evaluations = values.size();
  r.parameters = {{"ratio_inf", values[i]}};
  r.notes.push_back("observational: the margin is the infimum of the ratio itself");
  return settle(r, values[i]);
}

ClaimReport check_lgw(const BallScenario& s) {
  auto r = start("lgw", 1e-6 * s.tolerance / 1e-8);
  const auto pts = s.grid.points();
  std::vector<double> value(pts.size(), -std::numeric_limits<double>::infinity());
  std::vector<char> admissible(pts.size(), 0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const double h = std::abs(hessian_det(s.potential, pts[i]));
    if (!(h > 0.1 * hessian_scale(s.potential, pts[i]))) return;
    admissible[i] = 1;
    value[i] = lgw_residual(s.potential, pts[i]);
  });
  const auto used = static_cast<std::size_t>(std::count(admissible.begin(), admissible.end(), 1));
  r.evaluations = used;
  r.parameters = {{"admissible_points", static_cast<double>(used)}, {"eta_fraction", 0.1}};
  if (used == 0) return unverifiable(r, "no admissible points (|H| <= 0.1 scale everywhere)");
  const auto worst = std::max_element(value.begin(), value.end());
  r.argmin = as_point(pts[static_cast<std::size_t>(worst - value.begin())]);
  r.parameters.emplace_back("max_laplacian_log_H", *worst);
  return settle(r, -*worst);
}

ClaimReport check_cr_system(const BallScenario& s) {
  const double scale = std::max(1.0, s.potential.poly().max_abs());
  auto r = start("cr_system", 1e-12 * scale * s.tolerance / 1e-8);
  const auto grad = gradient_map(s.potential);
  const auto pts = s.grid.points();
  const auto values = sample_points(pts, [&](const Vec3& p) {
    const auto c = cr_residual(grad, p);
    return -std::max(c.symmetry, c.trace);
  });
  const std::size_t i = argmin_index(values);
  r.argmin = as_point(pts[i]);
  r.evaluations = values.size();
  r.parameters = {{"max_residual", -values[i]}, {"coefficient_scale", scale}};
  return settle(r, values[i]);
}

// ---------------------------------------------------------------------------
// Registry

namespace {

template <class Scenario>
std::vector<ClaimReport> run_any(const Scenario& s, const std::vector<std::string>& ids, double tolerance_scale,
                                 ClaimTarget target,
                                 const std::vector<std::pair<std::string, ClaimReport (*)(const Scenario&)>>& table) {
  if (!(tolerance_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance scale must be positive");
  Scenario scaled = s;
  scaled.tolerance *= tolerance_scale;
  if constexpr (requires { scaled.fd_tolerance; }) scaled.fd_tolerance *= tolerance_scale;

  std::vector<std::string> wanted = ids;
  if (wanted.empty())
    for (const auto& [id, fn] : table) wanted.push_back(id);
  std::vector<ClaimReport> out;
  for (const auto& id : wanted) {
    if (!known_claim(id)) throw Error(ErrorCode::UnknownClaim, "unknown claim id '" + id + "'");
    const auto hit = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == id; });
    if (hit == table.end()) {
      ClaimReport r = start(id, scaled.tolerance);
      out.push_back(unverifiable(r, std::string("not applicable to ") +
                                        (target == ClaimTarget::Disk ? "disk" : "ball") + " scenarios"));
      continue;
    }
    out.push_back(hit->second(scaled));
  }
  return out;
}

}  // namespace

std::vector<ClaimReport> run_claims(const DiskScenario& s, const std::vector<std::string>& ids,
                                    double tolerance_scale) {
  using Fn = ClaimReport (*)(const DiskScenario&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"T11_distance", check_T11_distance},
      {"T11_radial_normal", check_T11_radial_normal},
      {"T12_analytic_part", check_T12_analytic_part},
      {"hall", check_hall},
      {"T13_T15", check_T13_T15},
      {"T17_rkc", check_T17_rkc},
      {"T18_diameter", check_T18_diameter},
      {"T19", check_T19},
      {"min_principle", static_cast<Fn>(check_min_principle)},
      {"identities", check_identities},
      {"heinz_koebe", check_heinz_koebe},
      {"weak_H_ratio", static_cast<Fn>(check_weak_H_ratio)},
  };
  return run_any(s, ids, tolerance_scale, ClaimTarget::Disk, table);
}

std::vector<ClaimReport> run_claims(const BallScenario& s, const std::vector<std::string>& ids,
                                    double tolerance_scale) {
  using Fn = ClaimReport (*)(const BallScenario&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"T21_distance", check_T21_distance},
      {"min_principle", static_cast<Fn>(check_min_principle)},
      {"weak_H_ratio", static_cast<Fn>(check_weak_H_ratio)},
      {"lgw", check_lgw},
      {"cr_system", check_cr_system},
  };
  return run_any(s, ids, tolerance_scale, ClaimTarget::Ball, table);
}

}  // namespace hmlab
