#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hmlab/gallery.hpp"
#include "hmlab/parallel.hpp"
#include "hmlab/rkc.hpp"
#include "hmlab/scenario.hpp"

namespace fs = std::filesystem;
using namespace hmlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_reports(const std::string& name, const std::vector<ClaimReport>& reports) {
  for (const auto& r : reports) {
    char margin[32] = "-";
    if (r.margin) std::snprintf(margin, sizeof margin, "%.6g", *r.margin);
    std::printf("%-24s %-20s %-13s margin=%s\n", name.c_str(), r.id.c_str(), std::string(to_string(r.verdict)).c_str(),
                margin);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hmlab: numerical checks for harmonic maps of the disk and ball"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".", claims_csv, field;
  std::uint64_t seed = 7;
  double tolerance_scale = 1.0;
  int threads = 0, count = 10, intervals = 20;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
  };

  auto* run = app.add_subcommand("run", "run the claims of a scenario file and write a JSON report");
  run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  auto* run_seed = run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--claims", claims_csv, "comma-separated claim ids (overrides the file)");
  run->add_option("--tolerance-scale", tolerance_scale, "multiplies every claim tolerance")
      ->check(CLI::PositiveNumber);
  add_threads(run);

  auto* list = app.add_subcommand("list-claims", "list the claim registry");

  auto* gallery = app.add_subcommand("gallery", "generate the random scenario gallery, optionally checking claims");
  gallery->add_option("--count", count, "members per family")->check(CLI::PositiveNumber);
  gallery->add_option("--seed", seed, "gallery seed");
  gallery->add_option("--out", out_dir, "output directory");
  gallery->add_option("--claims", claims_csv, "comma-separated claim ids to run on every member");
  gallery->add_option("--tolerance-scale", tolerance_scale, "multiplies every claim tolerance")
      ->check(CLI::PositiveNumber);
  add_threads(gallery);

  auto* dump = app.add_subcommand("grid-dump", "write a scalar field on the scenario grid as CSV");
  dump->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  dump->add_option("--field", field, "J, Lambda, lambda, D or lnJ")->required();
  dump->add_option("--out", out_dir, "output directory");
  add_threads(dump);

  auto* homotopy = app.add_subcommand("homotopy", "trace m(lambda) from constant speed to the scenario boundary map");
  homotopy->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  homotopy->add_option("--intervals", intervals, "number of lambda intervals")->check(CLI::Range(2, 100000));
  homotopy->add_option("--out", out_dir, "output directory");
  add_threads(homotopy);

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  try {
    if (*list) {
      for (const auto& c : claim_catalog())
        std::printf("%-20s %-5s %s\n", c.id.c_str(), c.target == ClaimTarget::Disk ? "disk" : "ball",
                    c.summary.c_str());
      return kExitPass;
    }

    if (*run) {
      auto file = load_scenario(scenario_path);
      RunOptions opts;
      if (!claims_csv.empty()) opts.claims = split_csv(claims_csv);
      if (*run_seed) opts.seed = seed;
      opts.tolerance_scale = tolerance_scale;
      const auto result = run_scenario(file, opts);
      const fs::path report = fs::path(out_dir) / file.report_path;
      write_atomic(report, result.report_json);
      for (const auto& g : file.grids) write_atomic(fs::path(out_dir) / g.path, grid_csv(file, g.field));
      print_reports(file.name, result.reports);
      std::printf("report: %s\n", report.string().c_str());
      return result.all_pass ? kExitPass : kExitFail;
    }

    if (*dump) {
      const auto file = load_scenario(scenario_path);
      const auto csv = grid_csv(file, field);
      const fs::path path = fs::path(out_dir) / (file.name + "." + field + ".csv");
      write_atomic(path, csv);
      std::printf("grid: %s\n", path.string().c_str());
      return kExitPass;
    }

    if (*homotopy) {
      const auto file = load_scenario(scenario_path);
      if (!file.disk || !file.disk->boundary)
        throw Error(ErrorCode::InvalidArgument, "homotopy needs a curve scenario with a boundary map");
      const auto& g = *file.disk->boundary;
      const auto trace = homotopy_trace(g.curve_ptr(), g, intervals, file.disk->grid);
      const fs::path path = fs::path(out_dir) / (file.name + ".homotopy.json");
      write_atomic(path, trace_to_json(file, trace));
      for (std::size_t j = 0; j < trace.lambda.size(); ++j)
        std::printf("lambda=%.4f m=%.10g\n", trace.lambda[j], trace.m[j]);
      std::printf("max_jump=%.10g\ntrace: %s\n", trace.max_jump, path.string().c_str());
      bool positive = true;
      for (double m : trace.m) positive = positive && m > 0.0;
      return positive ? kExitPass : kExitFail;
    }

    if (*gallery) {
      const auto g = make_gallery(count, seed);
      const auto ids = split_csv(claims_csv);
      for (const auto& id : ids)
        if (!known_claim(id)) throw Error(ErrorCode::UnknownClaim, "unknown claim id '" + id + "'");
      nlohmann::ordered_json doc;
      doc["seed"] = seed;
      doc["count"] = count;
      doc["members"] = nlohmann::ordered_json::array();
      bool all_pass = true;
      auto emit = [&](const DiskScenario& s, const char* family) {
        std::ostringstream coeffs;
        coeffs.precision(17);
        for (const auto& c : s.map.coefficients()) coeffs << c.real() << ' ' << c.imag() << ' ';
        nlohmann::ordered_json m;
        m["name"] = s.name;
        m["family"] = family;
        m["seed"] = s.seed;
        m["coefficient_hash"] = fnv1a_hex(coeffs.str());
        m["h0_abs"] = std::abs(eval(s.map, cplx{}));
        m["curvature_min"] = s.domain->boundary->curvature_range().first;
        if (!ids.empty()) {
          const auto reports = run_claims(s, ids, tolerance_scale);
          print_reports(s.name, reports);
          m["claims"] = nlohmann::ordered_json::array();
          for (const auto& r : reports) {
            all_pass = all_pass && r.pass();
            m["claims"].push_back(nlohmann::ordered_json::parse(report_to_json(r)));
          }
        }
        doc["members"].push_back(std::move(m));
      };
      for (const auto& s : g.curves) emit(s, "curve");
      for (const auto& s : g.self_maps) emit(s, "self_map");
      const std::string text = doc.dump(2) + "\n";
      doc["set_hash"] = fnv1a_hex(text);
      const fs::path path = fs::path(out_dir) / ("gallery_" + std::to_string(seed) + ".json");
      write_atomic(path, doc.dump(2) + "\n");
      std::printf("gallery: %zu members, set_hash=%s\n%s\n", g.curves.size() + g.self_maps.size(),
                  doc["set_hash"].get<std::string>().c_str(), path.string().c_str());
      return all_pass ? kExitPass : kExitFail;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
