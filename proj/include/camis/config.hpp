#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "camis/cost_model.hpp"
#include "camis/elevation.hpp"
#include "camis/hex_terrain.hpp"
#include "camis/solver.hpp"

namespace camis {

/// Model keys: rho, mass, gravity, speed, alpha_margin_deg,
/// slip {family, c_r, c_a, epsilon}, roll_weight_k, compat_rho_squared.
/// Missing keys keep their defaults; unknown keys raise ConfigError.
CamisModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const CamisModel& model);

/// Where the elevation raster comes from: a file, or one of the synthetic generators.
struct TerrainSource {
  std::string path;                     // raster file; empty when synthetic
  ElevationFormat format = ElevationFormat::AsciiGrid;
  std::string artifact;                 // processed hex terrain; bypasses the raster when set
  std::string generator;                // flat | ramp | hills | two-level | apron-slope
  std::size_t n_cols = 101;
  std::size_t n_rows = 101;
  double cell = 0.1;
  std::uint64_t seed = 1;
  double steepness_deg = 10.0;
  double uphill_deg = 90.0;
  double y0 = 0.0;
  double y1 = 0.0;
  int count = 6;
  double amplitude = 1.0;
  double sigma_min = 0.08;
  double sigma_max = 0.2;
};

struct RunConfig {
  TerrainSource terrain;
  double hex_resolution = 0.5;
  int smoothing_radius = 0;
  CamisModel model;
  std::optional<Vec2> start;
  std::optional<Vec2> goal;
  std::string mode = "anisotropic";     // anisotropic | isotropic-equivalent | both
  std::string output_dir = "out";
  SolverOptions solver;
  std::vector<double> roll_thresholds_deg{2.0, 4.0, 6.0, 8.0, 10.0};
  std::vector<double> alphas_deg{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};

  void validate() const;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);
/// Relative terrain paths are resolved against the directory of the config file.
RunConfig load_run_config(const std::filesystem::path& path);

/// Raster for the configured source (file or generator), before smoothing.
ElevationGrid load_source_raster(const TerrainSource& source);

/// Raster -> smoothing -> hex resampling -> slope fields, or the stored artifact.
HexTerrain build_terrain(const RunConfig& config);

}  // namespace camis
