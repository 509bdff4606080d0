#pragma once

#include <vector>

#include "camis/cost_model.hpp"
#include "camis/hex_terrain.hpp"
#include "camis/solver.hpp"

namespace camis {

struct ProfileSample {
  double s = 0.0;         // arc length, m
  Vec2 position = Vec2::Zero();
  double elevation = 0.0;
  double heading = 0.0;   // rad, atan2 of the travel direction
  double alpha = 0.0;
  double beta = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  double cost = 0.0;      // cost per meter
  double cum_cost = 0.0;  // trapezoidal integral of cost over s
};

struct PathProfile {
  std::vector<ProfileSample> samples;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  double total_cost() const { return samples.empty() ? 0.0 : samples.back().cum_cost; }
  double max_abs_roll() const;
  double max_abs_pitch() const;
};

/// Orientation and cost along a polyline. Consecutive duplicate points are
/// dropped. Throws BoundsError naming the waypoint index when a point leaves
/// the valid terrain.
PathProfile profile(const std::vector<Vec2>& path, const HexTerrain& terrain, const CamisModel& model);

/// Arc length over which |roll| exceeds each threshold, with roll taken as
/// linear between samples.
std::vector<double> roll_exceedance(const PathProfile& profile, const std::vector<double>& thresholds);

struct ComparisonReport {
  double aniso_total = 0.0;     // planner total costs
  double iso_total = 0.0;
  double aniso_cost = 0.0;      // both paths re-profiled under the anisotropic model
  double iso_cost = 0.0;
  double saving_percent = 0.0;  // 100 (iso_cost - aniso_cost) / iso_cost
  double aniso_length = 0.0;
  double iso_length = 0.0;
  double aniso_seconds = 0.0;
  double iso_seconds = 0.0;
  std::vector<double> thresholds;
  std::vector<double> aniso_roll;
  std::vector<double> iso_roll;
};

ComparisonReport compare(const PlanResult& aniso, const PlanResult& iso, const HexTerrain& terrain,
                         const CamisModel& model, const std::vector<double>& roll_thresholds);

}  // namespace camis
