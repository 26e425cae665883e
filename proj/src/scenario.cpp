#include "hmlab/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hmlab/parallel.hpp"

namespace hmlab {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) fail("unknown key '" + k + "' in " + where);
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

double positive(const json& obj, const char* key, double fallback, const std::string& where) {
  const double v = get_or(obj, key, fallback);
  if (!(v > 0.0)) fail(where + "." + key + " must be positive");
  return v;
}

cplx complex_value(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  fail("complex coefficients are numbers or [re, im] pairs");
}

std::vector<cplx> complex_list(const json& obj, const char* key) {
  std::vector<cplx> out;
  if (!obj.contains(key)) return out;
  for (const auto& v : obj.at(key)) out.push_back(complex_value(v));
  return out;
}

/// 1 + sum a cos(j u + phase) over terms [j, a, phase] on n uniform samples.
std::vector<double> trig_samples(const json& terms, int n, double base = 1.0) {
  std::vector<double> out(static_cast<std::size_t>(n), base);
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() < 2 || t.size() > 3) fail("trig terms are [j, amplitude, phase]");
    const int j = t[0].get<int>();
    const double a = t[1].get<double>();
    const double ph = t.size() == 3 ? t[2].get<double>() : 0.0;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += a * std::cos(j * kTwoPi * i / n + ph);
  }
  return out;
}

struct Numerics {
  int modes = kDefaultModes;
  int curve_samples = kDefaultCurveSamples;
  int boundary_samples = kDefaultBoundarySamples;
  PolarGrid grid;
  BallGrid ball_grid;
  double tolerance = 1e-8;
  double fd_tolerance = 1e-5;
  std::uint64_t seed = 7;
};

Numerics parse_numerics(const json& doc) {
  Numerics n;
  if (!doc.contains("numerics")) return n;
  const auto& num = doc.at("numerics");
  only_keys(num, "numerics",
            {"modes", "curve_samples", "boundary_samples", "grid", "ball_grid", "tolerance", "fd_tolerance", "seed"});
  n.modes = get_or(num, "modes", n.modes);
  n.curve_samples = get_or(num, "curve_samples", n.curve_samples);
  n.boundary_samples = get_or(num, "boundary_samples", n.boundary_samples);
  if (n.modes < 1 || n.curve_samples < 16 || n.boundary_samples < 16) fail("numerics sizes are too small");
  if (num.contains("grid")) {
    const auto& g = num.at("grid");
    only_keys(g, "numerics.grid", {"radial", "angular", "max_radius"});
    n.grid.radial = get_or(g, "radial", n.grid.radial);
    n.grid.angular = get_or(g, "angular", n.grid.angular);
    n.grid.max_radius = get_or(g, "max_radius", n.grid.max_radius);
  }
  if (n.grid.radial < 1 || n.grid.angular < 1 || !(n.grid.max_radius > 0.0 && n.grid.max_radius < 1.0))
    fail("grid needs positive counts and max_radius in (0, 1)");
  if (num.contains("ball_grid")) {
    const auto& g = num.at("ball_grid");
    only_keys(g, "numerics.ball_grid", {"radial", "polar", "azimuth", "max_radius"});
    n.ball_grid.radial = get_or(g, "radial", n.ball_grid.radial);
    n.ball_grid.polar = get_or(g, "polar", n.ball_grid.polar);
    n.ball_grid.azimuth = get_or(g, "azimuth", n.ball_grid.azimuth);
    n.ball_grid.max_radius = get_or(g, "max_radius", n.ball_grid.max_radius);
  }
  if (n.ball_grid.radial < 1 || n.ball_grid.polar < 1 || n.ball_grid.azimuth < 1 ||
      !(n.ball_grid.max_radius > 0.0 && n.ball_grid.max_radius < 1.0))
    fail("ball_grid needs positive counts and max_radius in (0, 1)");
  n.tolerance = positive(num, "tolerance", n.tolerance, "numerics");
  n.fd_tolerance = positive(num, "fd_tolerance", n.fd_tolerance, "numerics");
  n.seed = get_or<std::uint64_t>(num, "seed", n.seed);
  return n;
}

CurvePtr parse_curve(const json& dom, const std::string& kind, const Numerics& n) {
  if (kind == "circle") {
    only_keys(dom, "domain", {"kind", "radius", "center"});
    const cplx c = dom.contains("center") ? complex_value(dom.at("center")) : cplx{};
    auto curve = circle_curve(positive(dom, "radius", 1.0, "domain"), n.curve_samples);
    return std::make_shared<const ConvexCurve>(c == cplx{} ? std::move(curve) : curve.transformed(1.0, c));
  }
  if (kind == "ellipse") {
    only_keys(dom, "domain", {"kind", "a", "b", "center"});
    const cplx c = dom.contains("center") ? complex_value(dom.at("center")) : cplx{};
    auto curve = ellipse_curve(dom.at("a").get<double>(), dom.at("b").get<double>(), n.curve_samples);
    return std::make_shared<const ConvexCurve>(c == cplx{} ? std::move(curve) : curve.transformed(1.0, c));
  }
  if (kind == "curvature-samples") {
    only_keys(dom, "domain", {"kind", "length", "values"});
    const auto values = dom.at("values").get<std::vector<double>>();
    return std::make_shared<const ConvexCurve>(
        curve_from_curvature(values, positive(dom, "length", kTwoPi, "domain")));
  }
  if (kind == "curvature-trig") {
    only_keys(dom, "domain", {"kind", "length", "terms"});
    // The profile 1 + sum a cos(j u + b) fixes the shape; it is scaled to turn once over the length.
    const double length = positive(dom, "length", kTwoPi, "domain");
    auto values = trig_samples(dom.at("terms"), n.curve_samples);
    for (auto& v : values) v *= kTwoPi / length;
    return std::make_shared<const ConvexCurve>(curve_from_curvature(values, length));
  }
  fail("unknown domain kind '" + kind + "'");
}

BoundaryMap parse_boundary(const json& doc, const CurvePtr& curve, const Numerics& n) {
  std::vector<double> speed(static_cast<std::size_t>(n.boundary_samples), 1.0);
  double phase = 0.0;
  if (doc.contains("boundary")) {
    const auto& b = doc.at("boundary");
    only_keys(b, "boundary", {"speed", "phase"});
    phase = get_or(b, "phase", 0.0);
    if (b.contains("speed")) {
      const auto& sp = b.at("speed");
      const std::string kind = sp.at("kind").get<std::string>();
      if (kind == "constant") {
        only_keys(sp, "boundary.speed", {"kind"});
      } else if (kind == "trig") {
        only_keys(sp, "boundary.speed", {"kind", "base", "terms"});
        speed = trig_samples(sp.at("terms"), n.boundary_samples, get_or(sp, "base", 1.0));
      } else if (kind == "samples") {
        only_keys(sp, "boundary.speed", {"kind", "values"});
        speed = sp.at("values").get<std::vector<double>>();
        if (speed.size() < 16) fail("speed samples need at least 16 values");
      } else {
        fail("unknown speed kind '" + kind + "'");
      }
    }
  }
  return boundary_from_speed(curve, speed, phase, n.modes);
}

HarmonicPoly3 parse_potential(const json& dom) {
  only_keys(dom, "domain", {"kind", "potential"});
  Poly3 p;
  for (const auto& t : dom.at("potential")) {
    if (!t.is_array() || t.size() != 4) fail("potential terms are [i, j, k, coefficient]");
    const int i = t[0].get<int>(), j = t[1].get<int>(), k = t[2].get<int>();
    if (i < 0 || j < 0 || k < 0) fail("negative exponent in potential");
    p = p + Poly3::monomial(i, j, k, t[3].get<double>());
  }
  return HarmonicPoly3(p);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered number(double v) { return std::isfinite(v) ? ordered(v) : ordered(nullptr); }

ordered report_object(const ClaimReport& r) {
  ordered o;
  o["id"] = r.id;
  o["verdict"] = std::string(to_string(r.verdict));
  o["pass"] = r.pass();
  o["margin"] = r.margin ? number(*r.margin) : ordered(nullptr);
  o["tolerance"] = number(r.tolerance);
  o["argmin"] = ordered::array();
  for (double x : r.argmin) o["argmin"].push_back(number(x));
  o["evaluations"] = r.evaluations;
  o["parameters"] = ordered::object();
  for (const auto& [k, v] : r.parameters) o["parameters"][k] = number(v);
  o["notes"] = r.notes;
  return o;
}

ordered certificate_object(const Certificate& c) {
  ordered o;
  o["certified"] = c.certified;
  o["ring_radius"] = number(c.ring_radius);
  o["ring_min"] = number(c.ring_min);
  o["interior_min"] = number(c.interior_min);
  o["interior_argmin"] = {number(c.interior_argmin.real()), number(c.interior_argmin.imag())};
  o["applied_bound"] = c.applied_bound;
  o["applied_value"] = number(c.applied_value);
  o["curvature_bound"] = number(c.curvature_bound);
  o["diameter_bound"] = number(c.diameter_bound);
  o["k"] = number(c.k);
  o["K"] = number(c.big_k);
  o["m"] = number(c.m);
  o["M"] = number(c.big_m);
  o["d"] = number(c.d);
  o["tolerance"] = number(c.tolerance);
  o["evaluations"] = c.evaluations;
  return o;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t ScenarioFile::seed() const { return disk ? disk->seed : ball->seed; }

void ScenarioFile::set_seed(std::uint64_t s) {
  if (disk) disk->seed = s;
  if (ball) ball->seed = s;
}

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    only_keys(doc, "scenario",
              {"schema_version", "name", "description", "domain", "boundary", "numerics", "claims", "outputs"});
    if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != kScenarioSchemaVersion)
      fail("schema_version must be " + std::to_string(kScenarioSchemaVersion));
    ScenarioFile f;
    f.name = get_or<std::string>(doc, "name", "scenario");
    f.hash = fnv1a_hex(doc.dump());
    const Numerics n = parse_numerics(doc);

    if (!doc.contains("domain")) fail("missing domain section");
    const auto& dom = doc.at("domain");
    const std::string kind = dom.at("kind").get<std::string>();
    if (kind == "ball-gradient") {
      if (doc.contains("boundary")) fail("ball-gradient scenarios take no boundary section");
      f.ball = BallScenario{f.name, parse_potential(dom), n.ball_grid, n.tolerance, n.seed};
    } else if (kind == "polynomial") {
      only_keys(dom, "domain", {"kind", "analytic", "coanalytic"});
      if (doc.contains("boundary")) fail("polynomial scenarios take no boundary section");
      f.disk = scenario_from_polynomial(f.name, complex_list(dom, "analytic"), complex_list(dom, "coanalytic"),
                                        n.grid);
    } else {
      const auto curve = parse_curve(dom, kind, n);
      f.disk = scenario_from_boundary(f.name, parse_boundary(doc, curve, n), n.grid);
      f.disk->unit_disk_target = kind == "circle" && get_or(dom, "radius", 1.0) == 1.0 && !dom.contains("center");
    }
    if (f.disk) {
      f.disk->tolerance = n.tolerance;
      f.disk->fd_tolerance = n.fd_tolerance;
      f.disk->seed = n.seed;
    }

    if (doc.contains("claims")) {
      const auto& c = doc.at("claims");
      if (c.is_string()) {
        if (c.get<std::string>() != "all") fail("claims is \"all\" or a list of ids");
      } else {
        for (const auto& id : c) {
          const auto s = id.get<std::string>();
          if (!known_claim(s)) fail("unknown claim id '" + s + "'");
          f.claims.push_back(s);
        }
      }
    }

    f.report_path = f.name + ".report.json";
    if (doc.contains("outputs")) {
      const auto& o = doc.at("outputs");
      only_keys(o, "outputs", {"report", "grids"});
      f.report_path = get_or(o, "report", f.report_path);
      if (o.contains("grids")) {
        for (const auto& g : o.at("grids")) {
          only_keys(g, "outputs.grids[]", {"field", "path"});
          GridOutput out{g.at("field").get<std::string>(), ""};
          if (!known_field(out.field)) throw Error(ErrorCode::UnknownField, "unknown grid field '" + out.field + "'");
          out.path = get_or(g, "path", f.name + "." + out.field + ".csv");
          f.grids.push_back(std::move(out));
        }
      }
      if (!f.grids.empty() && !f.disk) fail("grid outputs need a disk scenario");
    }
    return f;
  } catch (const json::exception& e) {
    fail(std::string("bad scenario: ") + e.what());
  }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string report_to_json(const ClaimReport& r) { return report_object(r).dump(2); }

RunResult run_scenario(ScenarioFile file, const RunOptions& opts) {
  if (opts.seed) file.set_seed(*opts.seed);
  const auto& ids = opts.claims ? *opts.claims : file.claims;
  RunResult out;
  out.reports = file.disk ? run_claims(*file.disk, ids, opts.tolerance_scale)
                          : run_claims(*file.ball, ids, opts.tolerance_scale);
  for (const auto& r : out.reports) out.all_pass = out.all_pass && r.pass();

  ordered doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["scenario"] = file.name;
  doc["scenario_hash"] = file.hash;
  doc["kind"] = file.disk ? "disk" : "ball";
  doc["environment"] = {{"library", "hmlab"}, {"version", "0.1.0"}, {"compiler", __VERSION__}};
  doc["seed"] = file.seed();
  doc["tolerance_scale"] = number(opts.tolerance_scale);
  if (file.disk && file.disk->boundary) {
    try {
      out.certificate = certify(*file.disk);
      doc["certificate"] = certificate_object(*out.certificate);
    } catch (const Error& e) {
      doc["certificate"] = {{"error", e.what()}};
    }
  }
  std::size_t passed = 0, failed = 0, unverifiable = 0;
  doc["claims"] = ordered::array();
  for (const auto& r : out.reports) {
    doc["claims"].push_back(report_object(r));
    (r.verdict == Verdict::Pass ? passed : r.verdict == Verdict::Fail ? failed : unverifiable) += 1;
  }
  doc["summary"] = {{"passed", passed}, {"failed", failed}, {"unverifiable", unverifiable}, {"all_pass", out.all_pass}};
  out.report_json = doc.dump(2) + "\n";
  return out;
}

bool known_field(const std::string& field) {
  return field == "J" || field == "Lambda" || field == "lambda" || field == "D" || field == "lnJ";
}

std::string grid_csv(const ScenarioFile& file, const std::string& field) {
  if (!known_field(field)) throw Error(ErrorCode::UnknownField, "unknown grid field '" + field + "'");
  if (!file.disk) throw Error(ErrorCode::InvalidArgument, "grid dumps need a disk scenario");
  const auto& h = file.disk->map;
  const auto& grid = file.disk->grid;
  const auto values = sample_grid(grid, [&](cplx z) {
    const auto [hz, hzb] = wirtinger(h, z);
    const double a = std::abs(hz), b = std::abs(hzb);
    if (field == "J") return a * a - b * b;
    if (field == "Lambda") return a + b;
    if (field == "lambda") return std::abs(a - b);
    if (field == "D") return a * a + b * b;
    return std::log(a * a - b * b);
  });
  std::string out = "# scenario_hash=" + file.hash + "\nr,theta,x,y,value\n";
  for (int i = 0; i < grid.radial; ++i)
    for (int j = 0; j < grid.angular; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.angular) +
                              static_cast<std::size_t>(j);
      const cplx z = grid.point(idx);
      out += format_double(grid.radius(i)) + ',' + format_double(grid.angle(j)) + ',' + format_double(z.real()) +
             ',' + format_double(z.imag()) + ',' + format_double(values[idx]) + '\n';
    }
  return out;
}

std::string trace_to_json(const ScenarioFile& file, const HomotopyTrace& t) {
  ordered doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["scenario"] = file.name;
  doc["scenario_hash"] = file.hash;
  doc["lambda"] = t.lambda;
  doc["m"] = ordered::array();
  for (double m : t.m) doc["m"].push_back(number(m));
  doc["max_jump"] = number(t.max_jump);
  doc["notes"] = t.notes;
  return doc.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hmlab
