#pragma once

#include <string>

#include "camis/hex_grid.hpp"

namespace camis {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Terramechanic constants of the drawbar-pull model.
struct PhysicalParams {
  double rho = 0.45;                      // specific resistance, (0, 1)
  double mass = 2.43;                     // effective mass, cost-unit * s^2 / m
  double gravity = 9.8;                   // m/s^2
  double speed = 0.5;                     // m/s
  double alpha_margin = deg2rad(15.0);    // braking band half-width, radians

  /// m*g/v: converts the dimensionless model into cost per meter.
  double scale() const { return mass * gravity / speed; }
  void validate() const;
};

enum class SlipFamily { None, Linear, Exponential };

std::string to_string(SlipFamily family);
SlipFamily parse_slip_family(const std::string& name);

/// Slip ratio s_r(alpha) and slip angle s_a(alpha).
///
/// linear:      s_r = c_r * tan(alpha),      s_a = c_a * alpha
/// exponential: s_r = c_r * (e^tan(alpha) - 1), s_a = c_a * (e^alpha - 1)
///
/// Both are zero on flat ground and non-decreasing. The model refuses any
/// steepness where s_r >= 1 - epsilon or s_a >= pi/2 - epsilon.
struct SlipModel {
  SlipFamily family = SlipFamily::None;
  double c_r = 0.0;
  double c_a = 0.0;
  double epsilon = 0.05;

  double ratio(double alpha) const;
  double angle(double alpha) const;
  double ratio_limit() const { return 1.0 - epsilon; }
  double angle_limit() const { return kPi / 2.0 - epsilon; }
  /// Smallest steepness at which either curve reaches its limit (pi/2 if never).
  double clamp_steepness() const;
  bool singular(double alpha) const { return ratio(alpha) >= ratio_limit() || angle(alpha) >= angle_limit(); }
  void validate() const;
};

/// w_phi(alpha) = 1 + k * tan(alpha).
struct RollWeight {
  double k = 0.0;
  double operator()(double alpha) const;
};

/// Cost per meter along the four slope-aligned headings.
struct DirectionalCosts {
  double descent = 0.0;   // beta = 0
  double ascent = 0.0;    // beta = +-pi
  double lateral1 = 0.0;  // beta = +pi/2
  double lateral2 = 0.0;  // beta = -pi/2
};

/// Displaced ellipse traced by 1/C(beta), written as the normalised conic
///   q1 cos^2(b) r^2 + q3 sin^2(b) r^2 + (q4 cos(b) + q5 sin(b)) r + 1 = 0
/// with r = 1/C and axes parallel to the slope (q2 = 0).
class CostEllipse {
 public:
  CostEllipse() = default;

  double q1() const { return q1_; }
  double q2() const { return 0.0; }
  double q3() const { return q3_; }
  double q4() const { return q4_; }
  double q5() const { return q5_; }
  const DirectionalCosts& anchors() const { return anchors_; }

  /// Semi-axes and centre of the ellipse in the 1/C plane (x along descent).
  double semi_axis_a() const { return a_; }
  double semi_axis_b() const { return b_; }
  const Vec2& center() const { return center_; }

  double cost(double beta) const;

 private:
  friend CostEllipse ellipse_from_anchors(const DirectionalCosts& d);

  double q1_ = -1.0, q3_ = -1.0, q4_ = 0.0, q5_ = 0.0;
  DirectionalCosts anchors_{1.0, 1.0, 1.0, 1.0};
  double a_ = 1.0, b_ = 1.0;
  Vec2 center_ = Vec2::Zero();
};

/// Heading angle of `heading` measured counter-clockwise from `aspect`, in [-pi, pi].
double beta(const Vec2& heading, const Vec2& aspect);

/// Pitch: positive when descending, atan(cos(beta) tan(alpha)).
double pitch(double alpha, double beta);

/// Roll: atan(sin(beta) tan(alpha)).
double roll(double alpha, double beta);

/// Drawbar pull resistance m g (rho cos(alpha)/cos(theta) - tan(theta)).
double rowe_resistance(double alpha, double theta, const PhysicalParams& p);

/// Steepness interval in which descending costs are replaced by the braking curve.
struct BrakingBand {
  double lower;   // max(0, atan(rho) - margin)
  double middle;  // atan(rho)
  double upper;   // atan(rho) + margin
  bool contains(double alpha) const { return alpha > middle - (upper - middle) && alpha < upper; }
};
BrakingBand braking_band(const PhysicalParams& p);

/// Quadratic Bezier through (lower, rho - tan(lower)), (atan(rho), 0),
/// (upper, tan(upper) - rho) in the (alpha, cost) plane, evaluated at alpha.
double bezier_braking(double alpha, const PhysicalParams& p);

DirectionalCosts directional_costs(double alpha, const PhysicalParams& p, const SlipModel& slip,
                                   const RollWeight& w, bool compat_rho_squared = false);

CostEllipse ellipse_from_anchors(const DirectionalCosts& d);
double eval_cost(const CostEllipse& e, double beta);

/// Smallest and largest cost over all headings.
struct CostRange {
  double min;
  double max;
};
CostRange cost_range(const CostEllipse& e);

/// Ratio of maximum to minimum cost over all headings.
double anisotropy(const CostEllipse& e);

/// Cost of the circle enclosing the same area as the ellipse: 1/sqrt(a b).
double isotropic_equivalent(const CostEllipse& e);

/// Full CAMIS model: physics, slip curves, roll weighting.
struct CamisModel {
  PhysicalParams physics;
  SlipModel slip;
  RollWeight roll_weight;
  bool compat_rho_squared = false;

  void validate() const;

  DirectionalCosts directional_costs(double alpha) const {
    return camis::directional_costs(alpha, physics, slip, roll_weight, compat_rho_squared);
  }
  CostEllipse ellipse(double alpha) const { return ellipse_from_anchors(directional_costs(alpha)); }
  double cost(double alpha, double beta) const { return eval_cost(ellipse(alpha), beta); }

  /// Closed-form cost expression evaluated directly at (alpha, beta), without
  /// going through the ellipse.
  double direct_cost(double alpha, double beta) const;

  /// True when the closed-form expression is itself a displaced ellipse at this
  /// steepness (its pre-absolute descent term is positive).
  bool direct_form_is_elliptic(double alpha) const;
};

}  // namespace camis
