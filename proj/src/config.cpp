#include "camis/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "camis/errors.hpp"
#include "camis/synthetic.hpp"

namespace camis {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

std::optional<Vec2> read_point(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string("'") + key + "' must be [x, y]");
  }
  return Vec2(v[0].get<double>(), v[1].get<double>());
}

std::string format_name(ElevationFormat f) { return f == ElevationFormat::Csv ? "csv" : "ascii-grid"; }

}  // namespace

CamisModel model_from_json(const json& j) {
  const std::string where = "model";
  reject_unknown(j, {"rho", "mass", "gravity", "speed", "alpha_margin_deg", "slip", "roll_weight_k",
                     "compat_rho_squared"},
                 where);
  CamisModel m;
  read(j, "rho", m.physics.rho, where);
  read(j, "mass", m.physics.mass, where);
  read(j, "gravity", m.physics.gravity, where);
  read(j, "speed", m.physics.speed, where);
  double margin = rad2deg(m.physics.alpha_margin);
  read(j, "alpha_margin_deg", margin, where);
  m.physics.alpha_margin = deg2rad(margin);
  read(j, "roll_weight_k", m.roll_weight.k, where);
  read(j, "compat_rho_squared", m.compat_rho_squared, where);
  if (j.contains("slip")) {
    const json& s = j.at("slip");
    reject_unknown(s, {"family", "c_r", "c_a", "epsilon"}, "model.slip");
    std::string family = "none";
    read(s, "family", family, "model.slip");
    m.slip.family = parse_slip_family(family);
    read(s, "c_r", m.slip.c_r, "model.slip");
    read(s, "c_a", m.slip.c_a, "model.slip");
    read(s, "epsilon", m.slip.epsilon, "model.slip");
  }
  try {
    m.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return m;
}

json model_to_json(const CamisModel& m) {
  return json{{"rho", m.physics.rho},
              {"mass", m.physics.mass},
              {"gravity", m.physics.gravity},
              {"speed", m.physics.speed},
              {"alpha_margin_deg", rad2deg(m.physics.alpha_margin)},
              {"slip",
               {{"family", to_string(m.slip.family)},
                {"c_r", m.slip.c_r},
                {"c_a", m.slip.c_a},
                {"epsilon", m.slip.epsilon}}},
              {"roll_weight_k", m.roll_weight.k},
              {"compat_rho_squared", m.compat_rho_squared}};
}

void RunConfig::validate() const {
  if (!(hex_resolution > 0.0)) throw ConfigError("hex_resolution must be positive");
  if (smoothing_radius < 0) throw ConfigError("smoothing_radius must be >= 0");
  if (mode != "anisotropic" && mode != "isotropic-equivalent" && mode != "both") {
    throw ConfigError("mode must be anisotropic, isotropic-equivalent or both");
  }
  if (!(solver.anisotropy_cap >= 1.0)) throw ConfigError("solver.anisotropy_cap must be >= 1");
  if (solver.path_step < 0.0 || solver.path_step > hex_resolution) {
    throw ConfigError("solver.path_step must lie in [0, hex_resolution]");
  }
  for (std::size_t k = 0; k < roll_thresholds_deg.size(); ++k) {
    if (roll_thresholds_deg[k] < 0.0 || (k > 0 && roll_thresholds_deg[k] < roll_thresholds_deg[k - 1])) {
      throw ConfigError("roll_thresholds_deg must be non-negative and sorted");
    }
  }
  const bool has_source = !terrain.path.empty() || !terrain.artifact.empty() || !terrain.generator.empty();
  if (!has_source) throw ConfigError("terrain needs a path, an artifact or a generator");
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown(j, {"terrain", "hex_resolution", "smoothing_radius", "model", "start", "goal", "mode",
                     "output_dir", "solver", "roll_thresholds_deg", "alphas_deg"},
                 "config");
  RunConfig c;
  if (j.contains("terrain")) {
    const json& t = j.at("terrain");
    reject_unknown(t, {"path", "format", "artifact", "generator", "n_cols", "n_rows", "cell", "seed",
                       "steepness_deg", "uphill_deg", "y0", "y1", "count", "amplitude", "sigma_min", "sigma_max"},
                   "terrain");
    TerrainSource& s = c.terrain;
    read(t, "path", s.path, "terrain");
    std::string format = format_name(s.format);
    read(t, "format", format, "terrain");
    try {
      s.format = parse_elevation_format(format);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    read(t, "artifact", s.artifact, "terrain");
    read(t, "generator", s.generator, "terrain");
    read(t, "n_cols", s.n_cols, "terrain");
    read(t, "n_rows", s.n_rows, "terrain");
    read(t, "cell", s.cell, "terrain");
    read(t, "seed", s.seed, "terrain");
    read(t, "steepness_deg", s.steepness_deg, "terrain");
    read(t, "uphill_deg", s.uphill_deg, "terrain");
    read(t, "y0", s.y0, "terrain");
    read(t, "y1", s.y1, "terrain");
    read(t, "count", s.count, "terrain");
    read(t, "amplitude", s.amplitude, "terrain");
    read(t, "sigma_min", s.sigma_min, "terrain");
    read(t, "sigma_max", s.sigma_max, "terrain");
  }
  read(j, "hex_resolution", c.hex_resolution, "config");
  read(j, "smoothing_radius", c.smoothing_radius, "config");
  if (j.contains("model")) c.model = model_from_json(j.at("model"));
  c.start = read_point(j, "start");
  c.goal = read_point(j, "goal");
  read(j, "mode", c.mode, "config");
  read(j, "output_dir", c.output_dir, "config");
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, {"anisotropy_cap", "first_side", "path_step"}, "solver");
    read(s, "anisotropy_cap", c.solver.anisotropy_cap, "solver");
    read(s, "path_step", c.solver.path_step, "solver");
    std::string first = "goal";
    read(s, "first_side", first, "solver");
    if (first == "goal") {
      c.solver.first_side = SideLabel::FromGoal;
    } else if (first == "start") {
      c.solver.first_side = SideLabel::FromStart;
    } else {
      throw ConfigError("solver.first_side must be 'goal' or 'start'");
    }
  }
  read(j, "roll_thresholds_deg", c.roll_thresholds_deg, "config");
  read(j, "alphas_deg", c.alphas_deg, "config");
  c.validate();
  return c;
}

json run_config_to_json(const RunConfig& c) {
  const TerrainSource& s = c.terrain;
  json terrain{{"path", s.path}, {"format", format_name(s.format)}, {"artifact", s.artifact},
               {"generator", s.generator}};
  if (!s.generator.empty()) {
    terrain.update({{"n_cols", s.n_cols}, {"n_rows", s.n_rows}, {"cell", s.cell}, {"seed", s.seed},
                    {"steepness_deg", s.steepness_deg}, {"uphill_deg", s.uphill_deg}, {"y0", s.y0},
                    {"y1", s.y1}, {"count", s.count}, {"amplitude", s.amplitude},
                    {"sigma_min", s.sigma_min}, {"sigma_max", s.sigma_max}});
  }
  auto point = [](const std::optional<Vec2>& p) { return p ? json::array({p->x(), p->y()}) : json(nullptr); };
  return json{{"terrain", terrain},
              {"hex_resolution", c.hex_resolution},
              {"smoothing_radius", c.smoothing_radius},
              {"model", model_to_json(c.model)},
              {"start", point(c.start)},
              {"goal", point(c.goal)},
              {"mode", c.mode},
              {"output_dir", c.output_dir},
              {"solver",
               {{"anisotropy_cap", c.solver.anisotropy_cap},
                {"first_side", c.solver.first_side == SideLabel::FromGoal ? "goal" : "start"},
                {"path_step", c.solver.path_step}}},
              {"roll_thresholds_deg", c.roll_thresholds_deg},
              {"alphas_deg", c.alphas_deg}};
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunConfig c = run_config_from_json(j);
  // Terrain files are resolved against the config file's directory.
  const std::filesystem::path base = path.parent_path();
  for (std::string* p : {&c.terrain.path, &c.terrain.artifact}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
  }
  return c;
}

ElevationGrid load_source_raster(const TerrainSource& s) {
  if (!s.path.empty()) return load_elevation(s.path, s.format);
  const synthetic::RasterShape shape{s.n_cols, s.n_rows, s.cell};
  if (s.generator == "flat") return synthetic::flat(shape);
  if (s.generator == "ramp") return synthetic::ramp(shape, s.steepness_deg, s.uphill_deg);
  if (s.generator == "hills") {
    synthetic::HillsParams hp;
    hp.count = s.count;
    hp.max_amplitude = s.amplitude;
    hp.sigma_min = s.sigma_min;
    hp.sigma_max = s.sigma_max;
    return synthetic::hills(shape, s.seed, hp);
  }
  if (s.generator == "two-level") return synthetic::two_level(shape, s.y0, s.y1, s.steepness_deg);
  if (s.generator == "apron-slope") return synthetic::apron_slope(shape, s.y0, s.steepness_deg);
  throw ConfigError("unknown terrain generator '" + s.generator + "'");
}

HexTerrain build_terrain(const RunConfig& c) {
  if (!c.terrain.artifact.empty()) return read_artifact(c.terrain.artifact);
  ElevationGrid grid = load_source_raster(c.terrain);
  if (c.smoothing_radius > 0) grid = smooth(grid, c.smoothing_radius);
  HexTerrain terrain = resample_to_hex(grid, c.hex_resolution);
  slope_fields(terrain);
  return terrain;
}

}  // namespace camis
