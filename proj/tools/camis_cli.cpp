// Command-line front end: process-dem, plan, compare, profile-cost.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "camis/config.hpp"
#include "camis/errors.hpp"
#include "camis/hex_terrain.hpp"
#include "camis/metrics.hpp"
#include "camis/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace camis;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kPlanning = 4 };

struct Overrides {
  std::string config;
  std::string start;
  std::string goal;
  std::string mode;
  std::string out;
  std::string terrain;
  std::string alphas;
  double hex_res = 0.0;
  std::optional<std::uint64_t> seed;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("cannot parse {} '{}'", what, text));
    }
  }
  return out;
}

Vec2 parse_point(const std::string& text, const char* what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw ConfigError(fmt::format("{} must be x,y", what));
  return {v[0], v[1]};
}

RunConfig effective_config(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (!o.start.empty()) c.start = parse_point(o.start, "--start");
  if (!o.goal.empty()) c.goal = parse_point(o.goal, "--goal");
  if (!o.mode.empty()) c.mode = o.mode;
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.terrain.empty()) c.terrain.artifact = o.terrain;
  if (o.hex_res > 0.0) c.hex_resolution = o.hex_res;
  if (o.seed) c.terrain.seed = *o.seed;
  if (!o.alphas.empty()) c.alphas_deg = parse_list(o.alphas, "--alpha");
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string path_csv(const PathProfile& p) {
  std::string out = "s,x,y,z,heading_rad,alpha_rad,beta_rad,pitch_rad,roll_rad,cost_per_m,cum_cost\n";
  for (const auto& s : p.samples) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", s.s, s.position.x(), s.position.y(), s.elevation,
                       s.heading, s.alpha, s.beta, s.pitch, s.roll, s.cost, s.cum_cost);
  }
  return out;
}

HexIndex locate(const HexTerrain& terrain, const CostField& field, const Vec2& p, const char* what) {
  const auto idx = terrain.node_at(p);
  if (!idx) throw ConfigError(fmt::format("{} ({}, {}) is outside the valid terrain", what, p.x(), p.y()));
  if (!field.usable(*idx)) {
    throw ConfigError(fmt::format("{} ({}, {}) lies on a node where the cost model is undefined", what, p.x(), p.y()));
  }
  return *idx;
}

std::vector<double> thresholds_rad(const RunConfig& c) {
  std::vector<double> t;
  for (double d : c.roll_thresholds_deg) t.push_back(deg2rad(d));
  return t;
}

json roll_table(const std::vector<double>& thresholds_deg, const std::vector<double>& meters) {
  json rows = json::array();
  for (std::size_t k = 0; k < meters.size(); ++k) rows.push_back({{"threshold_deg", thresholds_deg[k]}, {"meters", meters[k]}});
  return rows;
}

json plan_summary(const PlanResult& r, const PathProfile& p, const RunConfig& c, const HexTerrain& terrain) {
  const auto& d = r.diagnostics;
  const Vec2 ps = terrain.position(r.start);
  const Vec2 pg = terrain.position(r.goal);
  return json{{"mode", to_string(r.field->mode())},
              {"total_cost", r.total_cost},
              {"profile_cost", p.total_cost()},
              {"path_length", p.length()},
              {"path_points", p.samples.size()},
              {"path_step", r.path_step},
              {"start", {{"node", {r.start.i, r.start.j}}, {"position", {ps.x(), ps.y()}}}},
              {"goal", {{"node", {r.goal.i, r.goal.j}}, {"position", {pg.x(), pg.y()}}}},
              {"meeting_node", {r.meeting.i, r.meeting.j}},
              {"max_abs_roll_deg", rad2deg(p.max_abs_roll())},
              {"max_abs_pitch_deg", rad2deg(p.max_abs_pitch())},
              {"roll_exceedance", roll_table(c.roll_thresholds_deg, roll_exceedance(p, thresholds_rad(c)))},
              {"nodes_expanded", {{"from_start", d.expanded[0]}, {"from_goal", d.expanded[1]}}},
              {"regime_counts",
               {{"semi_lagrangian", d.regime_counts[0]}, {"eulerian", d.regime_counts[1]}, {"fallback", d.regime_counts[2]}}},
              {"monotonicity_violations", d.monotonicity_violations},
              {"max_anisotropy", d.max_anisotropy},
              {"clamped_nodes", d.clamped_nodes},
              {"excluded_nodes", d.excluded_nodes},
              {"warnings", d.warnings},
              {"wall_time_s", d.wall_seconds}};
}

int cmd_process_dem(const Overrides& o) {
  RunConfig c = effective_config(o);
  c.terrain.artifact.clear();
  const HexTerrain terrain = build_terrain(c);
  const fs::path out = fs::path(c.output_dir) / "terrain.hex";
  fs::create_directories(out.parent_path());
  write_artifact(terrain, out);
  std::cout << out.string() << '\n';
  return kOk;
}

int run_plans(const Overrides& o, bool force_both) {
  RunConfig c = effective_config(o);
  if (force_both) c.mode = "both";
  c.validate();
  if (!c.start || !c.goal) throw ConfigError("start and goal are required (config or --start/--goal)");
  const HexTerrain terrain = build_terrain(c);
  const fs::path out_dir(c.output_dir);

  std::vector<PlanMode> modes;
  if (c.mode == "both") {
    modes = {PlanMode::Anisotropic, PlanMode::IsotropicEquivalent};
  } else {
    modes = {parse_plan_mode(c.mode)};
  }
  std::vector<std::shared_ptr<const CostField>> fields;
  std::vector<HexIndex> starts;
  std::vector<HexIndex> goals;
  for (PlanMode m : modes) {
    fields.push_back(std::make_shared<const CostField>(terrain, c.model, m, c.solver.anisotropy_cap));
    starts.push_back(locate(terrain, *fields.back(), *c.start, "start"));
    goals.push_back(locate(terrain, *fields.back(), *c.goal, "goal"));
  }
  if (starts.front() == goals.front()) throw ConfigError("start and goal map to the same node");

  std::vector<std::future<PlanResult>> jobs;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    jobs.push_back(std::async(std::launch::async,
                              [&, k] { return plan(starts[k], goals[k], fields[k], c.solver); }));
  }
  std::vector<PlanResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  json summary;
  summary["config"] = run_config_to_json(c);
  json plans = json::object();
  for (const PlanResult& r : results) {
    const PathProfile p = profile(r.path, terrain, c.model);
    const std::string name = to_string(r.field->mode());
    const fs::path csv = out_dir / (results.size() == 1 ? std::string("path.csv") : "path_" + name + ".csv");
    write_text(csv, path_csv(p));
    plans[name] = plan_summary(r, p, c, terrain);
    plans[name]["csv"] = csv.filename().string();
    for (const auto& w : r.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
  }
  summary["plans"] = plans;
  if (results.size() == 2) {
    const ComparisonReport rep = compare(results[0], results[1], terrain, c.model, thresholds_rad(c));
    summary["comparison"] = {{"anisotropic_total_cost", rep.aniso_total},
                             {"isotropic_total_cost", rep.iso_total},
                             {"anisotropic_cost", rep.aniso_cost},
                             {"isotropic_cost_under_anisotropic_model", rep.iso_cost},
                             {"saving_percent", rep.saving_percent},
                             {"anisotropic_length", rep.aniso_length},
                             {"isotropic_length", rep.iso_length},
                             {"anisotropic_wall_time_s", rep.aniso_seconds},
                             {"isotropic_wall_time_s", rep.iso_seconds},
                             {"anisotropic_roll_exceedance", roll_table(c.roll_thresholds_deg, rep.aniso_roll)},
                             {"isotropic_roll_exceedance", roll_table(c.roll_thresholds_deg, rep.iso_roll)}};
    std::cout << fmt::format("saving {}%\n", rep.saving_percent);
  }
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  for (const PlanResult& r : results) {
    std::cout << fmt::format("{}: total cost {}\n", to_string(r.field->mode()), r.total_cost);
  }
  return kOk;
}

int cmd_profile_cost(const Overrides& o) {
  const RunConfig c = effective_config(o);
  const CamisModel& m = c.model;
  std::string out =
      "alpha_deg,beta_deg,cost_per_m,descent,ascent,lateral1,lateral2,anisotropy,isotropic_equivalent,flag\n";
  for (double a : c.alphas_deg) {
    if (a < 0.0 || a >= 90.0) throw ConfigError(fmt::format("steepness {} deg outside [0, 90)", a));
    const double alpha = deg2rad(a);
    try {
      const CostEllipse e = m.ellipse(alpha);
      const DirectionalCosts& d = e.anchors();
      const double ups = anisotropy(e);
      const double cn = isotropic_equivalent(e);
      for (int b = -180; b <= 180; ++b) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},ok\n", a, b, e.cost(deg2rad(b)), d.descent, d.ascent,
                           d.lateral1, d.lateral2, ups, cn);
      }
    } catch (const SlipSingularityError&) {
      out += fmt::format("{},,,,,,,,,slip_clamped\n", a);
    }
  }
  const fs::path path = fs::path(c.output_dir) / "cost_table.csv";
  write_text(path, out);
  std::cout << path.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic path planning on inclined terrain"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--hex-res", o.hex_res, "Hex grid resolution in meters");
    sub->add_option("--seed", o.seed, "Seed for synthetic terrain generation");
  };
  auto* process = app.add_subcommand("process-dem", "Resample a DEM onto the hex grid and write the terrain artifact");
  add_common(process);
  std::vector<CLI::App*> planners;
  for (const char* name : {"plan", "compare"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "plan" ? "Plan an optimal path"
                                                                      : "Plan anisotropic and isotropic paths and compare");
    add_common(sub);
    sub->add_option("--start", o.start, "Start position x,y in meters");
    sub->add_option("--goal", o.goal, "Goal position x,y in meters");
    sub->add_option("--terrain", o.terrain, "Processed terrain artifact");
    if (std::string(name) == "plan") sub->add_option("--mode", o.mode, "anisotropic | isotropic-equivalent | both");
    planners.push_back(sub);
  }
  auto* prof = app.add_subcommand("profile-cost", "Tabulate the cost model over steepness and heading");
  add_common(prof);
  prof->add_option("--alpha", o.alphas, "Comma-separated steepness values in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (process->parsed()) return cmd_process_dem(o);
    if (planners[0]->parsed()) return run_plans(o, false);
    if (planners[1]->parsed()) return run_plans(o, true);
    if (prof->parsed()) return cmd_profile_cost(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const FormatError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const BoundsError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const UnreachableError& e) {
    std::cerr << "planning failed: " << e.what() << '\n';
    return kPlanning;
  } catch (const DivergenceError& e) {
    std::cerr << "planning failed: " << e.what() << '\n';
    return kPlanning;
  } catch (const Error& e) {
    std::cerr << "planning failed: " << e.what() << '\n';
    return kPlanning;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
