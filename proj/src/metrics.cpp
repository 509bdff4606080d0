#include "camis/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "camis/errors.hpp"

namespace camis {

namespace {

// Measure of {u in [0, 1] : a + (b - a) u > t}.
double above(double a, double b, double t) {
  if (a > t && b > t) return 1.0;
  if (a <= t && b <= t) return 0.0;
  const double u = (t - a) / (b - a);
  return a > t ? u : 1.0 - u;
}

}  // namespace

double PathProfile::max_abs_roll() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.roll));
  return m;
}

double PathProfile::max_abs_pitch() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.pitch));
  return m;
}

PathProfile profile(const std::vector<Vec2>& path, const HexTerrain& terrain, const CamisModel& model) {
  std::vector<Vec2> pts;
  pts.reserve(path.size());
  for (const Vec2& p : path) {
    if (pts.empty() || (p - pts.back()).norm() > 0.0) pts.push_back(p);
  }
  if (pts.size() < 2) throw ContractViolation("profile needs at least two distinct waypoints");

  PathProfile out;
  out.samples.resize(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    ProfileSample& s = out.samples[k];
    s.position = pts[k];
    if (k > 0) s.s = out.samples[k - 1].s + (pts[k] - pts[k - 1]).norm();
    const Vec2 d = k == 0 ? Vec2(pts[1] - pts[0])
                   : k + 1 == pts.size() ? Vec2(pts[k] - pts[k - 1])
                                         : Vec2(pts[k + 1] - pts[k - 1]);
    const Vec2 dir = d.normalized();
    const auto slope = terrain.interpolate(pts[k]);
    if (!slope) {
      throw BoundsError(fmt::format("waypoint {} at ({}, {}) is outside the valid terrain", k, pts[k].x(), pts[k].y()));
    }
    s.elevation = slope->elevation;
    s.heading = heading_angle(dir);
    s.alpha = slope->steepness;
    s.beta = beta(dir, slope->aspect);
    s.pitch = pitch(s.alpha, s.beta);
    s.roll = roll(s.alpha, s.beta);
    s.cost = model.cost(s.alpha, s.beta);
    if (k > 0) {
      const ProfileSample& prev = out.samples[k - 1];
      s.cum_cost = prev.cum_cost + 0.5 * (prev.cost + s.cost) * (s.s - prev.s);
    }
  }
  return out;
}

std::vector<double> roll_exceedance(const PathProfile& profile, const std::vector<double>& thresholds) {
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (thresholds[k] < 0.0 || (k > 0 && thresholds[k] < thresholds[k - 1])) {
      throw ContractViolation("roll thresholds must be non-negative and sorted");
    }
  }
  std::vector<double> out(thresholds.size(), 0.0);
  const auto& s = profile.samples;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double len = s[k].s - s[k - 1].s;
    const double a = s[k - 1].roll;
    const double b = s[k].roll;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      out[t] += len * (above(a, b, thresholds[t]) + above(-a, -b, thresholds[t]));
    }
  }
  return out;
}

ComparisonReport compare(const PlanResult& aniso, const PlanResult& iso, const HexTerrain& terrain,
                         const CamisModel& model, const std::vector<double>& roll_thresholds) {
  if (aniso.start != iso.start || aniso.goal != iso.goal) {
    throw ContractViolation("compared plans must share start and goal");
  }
  const PathProfile pa = profile(aniso.path, terrain, model);
  const PathProfile pi = profile(iso.path, terrain, model);
  ComparisonReport r;
  r.aniso_total = aniso.total_cost;
  r.iso_total = iso.total_cost;
  r.aniso_cost = pa.total_cost();
  r.iso_cost = pi.total_cost();
  r.saving_percent = 100.0 * (r.iso_cost - r.aniso_cost) / r.iso_cost;
  r.aniso_length = pa.length();
  r.iso_length = pi.length();
  r.aniso_seconds = aniso.diagnostics.wall_seconds;
  r.iso_seconds = iso.diagnostics.wall_seconds;
  r.thresholds = roll_thresholds;
  r.aniso_roll = roll_exceedance(pa, roll_thresholds);
  r.iso_roll = roll_exceedance(pi, roll_thresholds);
  return r;
}

}  // namespace camis
