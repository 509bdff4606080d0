#include "camis/cost_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "camis/errors.hpp"

namespace camis {

namespace {

constexpr double kUnitTol = 1e-6;

// Cost structure shared by the anchors and the closed form:
//   C(beta) = | sqrt((X cos b)^2 + (Y sin b)^2) - Z cos b | * scale
struct LongLat {
  double x;  // longitudinal radius term
  double y;  // lateral term
  double z;  // gravity shift
};

LongLat cost_terms(double alpha, const PhysicalParams& p, const SlipModel& slip, const RollWeight& w,
                   bool compat_rho_squared) {
  if (!(alpha >= 0.0) || !(alpha < kPi / 2.0)) {
    throw ContractViolation(fmt::format("steepness {} rad outside [0, pi/2)", alpha));
  }
  const double sr = slip.ratio(alpha);
  const double sa = slip.angle(alpha);
  if (sr >= slip.ratio_limit()) {
    throw SlipSingularityError(fmt::format("slip ratio reaches {} >= {} at steepness {} deg", sr,
                                           slip.ratio_limit(), rad2deg(alpha)));
  }
  if (sa >= slip.angle_limit()) {
    throw SlipSingularityError(fmt::format("slip angle reaches {} rad >= {} rad at steepness {} deg", sa,
                                           slip.angle_limit(), rad2deg(alpha)));
  }
  const double rho = p.rho;
  const double t = std::tan(alpha);
  const double lateral = rho * std::cos(alpha) * w(alpha) / std::cos(sa);
  if (braking_band(p).contains(alpha)) {
    const double rb = bezier_braking(alpha, p);
    return {(rho + t + rb) / (2.0 * (1.0 - sr)), lateral, (rho + t - rb) / 2.0};
  }
  const double lon = compat_rho_squared ? rho * rho : rho;
  return {lon / (1.0 - sr), lateral, t};
}

double eval_terms(const LongLat& terms, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  return std::abs(std::hypot(terms.x * c, terms.y * s) - terms.z * c);
}

// Golden-section search for the extremum of f on [lo, hi]; sign = +1 minimises, -1 maximises.
template <typename F>
double golden_extremum(F&& f, double lo, double hi, double sign) {
  constexpr double inv_phi = 0.61803398874989484820;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = sign * f(x1);
  double f2 = sign * f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sign * f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sign * f(x2);
    }
  }
  return f(0.5 * (lo + hi));
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw ContractViolation("rho must lie in (0, 1)");
  if (!(mass > 0.0) || !(gravity > 0.0) || !(speed > 0.0)) {
    throw ContractViolation("mass, gravity and speed must be positive");
  }
  if (!(alpha_margin > 0.0) || !(alpha_margin < std::atan(rho) + kPi / 4.0)) {
    throw ContractViolation("alpha margin must lie in (0, atan(rho) + pi/4)");
  }
}

std::string to_string(SlipFamily family) {
  switch (family) {
    case SlipFamily::None: return "none";
    case SlipFamily::Linear: return "linear";
    case SlipFamily::Exponential: return "exponential";
  }
  return "none";
}

SlipFamily parse_slip_family(const std::string& name) {
  if (name == "none") return SlipFamily::None;
  if (name == "linear") return SlipFamily::Linear;
  if (name == "exponential") return SlipFamily::Exponential;
  throw ConfigError("unknown slip family '" + name + "' (expected none, linear or exponential)");
}

double SlipModel::ratio(double alpha) const {
  switch (family) {
    case SlipFamily::None: return 0.0;
    case SlipFamily::Linear: return c_r * std::tan(alpha);
    case SlipFamily::Exponential: return c_r * std::expm1(std::tan(alpha));
  }
  return 0.0;
}

double SlipModel::angle(double alpha) const {
  switch (family) {
    case SlipFamily::None: return 0.0;
    case SlipFamily::Linear: return c_a * alpha;
    case SlipFamily::Exponential: return c_a * std::expm1(alpha);
  }
  return 0.0;
}

double SlipModel::clamp_steepness() const {
  double limit = kPi / 2.0;
  switch (family) {
    case SlipFamily::None: break;
    case SlipFamily::Linear:
      if (c_r > 0.0) limit = std::min(limit, std::atan(ratio_limit() / c_r));
      if (c_a > 0.0) limit = std::min(limit, angle_limit() / c_a);
      break;
    case SlipFamily::Exponential:
      if (c_r > 0.0) limit = std::min(limit, std::atan(std::log1p(ratio_limit() / c_r)));
      if (c_a > 0.0) limit = std::min(limit, std::log1p(angle_limit() / c_a));
      break;
  }
  return limit;
}

void SlipModel::validate() const {
  if (!(c_r >= 0.0) || !(c_a >= 0.0)) throw ContractViolation("slip coefficients must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ContractViolation("slip epsilon must lie in (0, 1)");
}

double RollWeight::operator()(double alpha) const { return 1.0 + k * std::tan(alpha); }

double beta(const Vec2& heading, const Vec2& aspect) {
  const double nh = heading.norm();
  const double na = aspect.norm();
  if (std::abs(nh - 1.0) > kUnitTol || std::abs(na - 1.0) > kUnitTol) {
    throw ContractViolation("beta needs unit heading and aspect vectors");
  }
  const double cross = aspect.x() * heading.y() - aspect.y() * heading.x();
  return std::atan2(cross, aspect.dot(heading));
}

double pitch(double alpha, double beta) { return std::atan(std::cos(beta) * std::tan(alpha)); }

double roll(double alpha, double beta) { return std::atan(std::sin(beta) * std::tan(alpha)); }

double rowe_resistance(double alpha, double theta, const PhysicalParams& p) {
  if (std::abs(theta) > alpha + 1e-12) throw ContractViolation("rowe_resistance needs |theta| <= alpha");
  return p.mass * p.gravity * (p.rho * std::cos(alpha) / std::cos(theta) - std::tan(theta));
}

BrakingBand braking_band(const PhysicalParams& p) {
  const double mid = std::atan(p.rho);
  return {std::max(0.0, mid - p.alpha_margin), mid, mid + p.alpha_margin};
}

double bezier_braking(double alpha, const PhysicalParams& p) {
  const BrakingBand band = braking_band(p);
  constexpr double tol = 1e-12;
  if (alpha < band.lower - tol || alpha > band.upper + tol) {
    throw ContractViolation(fmt::format("steepness {} deg outside the braking band [{}, {}] deg", rad2deg(alpha),
                                        rad2deg(band.lower), rad2deg(band.upper)));
  }
  const double c0 = p.rho - std::tan(band.lower);
  const double c2 = std::tan(band.upper) - p.rho;
  // alpha(t) = A t^2 + B t + lower, monotone on [0, 1] since lower < middle < upper.
  const double qa = band.lower - 2.0 * band.middle + band.upper;
  const double qb = 2.0 * (band.middle - band.lower);
  const double rhs = alpha - band.lower;
  const double disc = qb * qb + 4.0 * qa * rhs;
  double t = 0.5;
  if (disc > 0.0) {
    t = 2.0 * rhs / (qb + std::sqrt(disc));
  } else if (qa != 0.0) {
    t = -qb / (2.0 * qa);
  }
  t = std::clamp(t, 0.0, 1.0);
  const double u = 1.0 - t;
  return u * u * c0 + t * t * c2;
}

DirectionalCosts directional_costs(double alpha, const PhysicalParams& p, const SlipModel& slip,
                                   const RollWeight& w, bool compat_rho_squared) {
  const LongLat terms = cost_terms(alpha, p, slip, w, compat_rho_squared);
  const double scale = p.scale();
  return {std::abs(terms.x - terms.z) * scale, std::abs(terms.x + terms.z) * scale, terms.y * scale,
          terms.y * scale};
}

CostEllipse ellipse_from_anchors(const DirectionalCosts& d) {
  for (double c : {d.descent, d.ascent, d.lateral1, d.lateral2}) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ContractViolation("ellipse anchors must be positive and finite");
  }
  CostEllipse e;
  e.anchors_ = d;
  e.q1_ = -d.ascent * d.descent;
  e.q3_ = -d.lateral2 * d.lateral1;
  e.q4_ = d.ascent - d.descent;
  e.q5_ = d.lateral2 - d.lateral1;
  // Complete the square: P (x - x0)^2 + Q (y - y0)^2 = K.
  const double p = -e.q1_;
  const double q = -e.q3_;
  const double k = 1.0 + e.q4_ * e.q4_ / (4.0 * p) + e.q5_ * e.q5_ / (4.0 * q);
  e.a_ = std::sqrt(k / p);
  e.b_ = std::sqrt(k / q);
  e.center_ = Vec2{e.q4_ / (2.0 * p), e.q5_ / (2.0 * q)};
  return e;
}

double CostEllipse::cost(double beta) const {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const double qa = q1_ * c * c + q3_ * s * s;
  const double qb = q4_ * c + q5_ * s;
  const double disc = qb * qb - 4.0 * qa;
  if (!(qa < 0.0) || !(disc >= 0.0)) {
    throw InvalidEllipseError(fmt::format("cost conic has no positive root at beta = {}", beta));
  }
  // Positive root r of qa r^2 + qb r + 1 = 0, returned as C = 1/r.
  return 0.5 * (std::sqrt(disc) - qb);
}

double eval_cost(const CostEllipse& e, double beta) { return e.cost(beta); }

CostRange cost_range(const CostEllipse& e) {
  double cmin = std::numeric_limits<double>::infinity();
  double cmax = 0.0;
  if (e.q5() == 0.0) {
    // C as a function of c = cos(beta): (sqrt(K c^2 + M) - q4 c) / 2, whose
    // stationary points satisfy c^2 = q4^2 M / (K (K - q4^2)).
    const double k = e.q4() * e.q4() - 4.0 * e.q1() + 4.0 * e.q3();
    const double m = -4.0 * e.q3();
    std::array<double, 5> cands{-1.0, 0.0, 1.0, 2.0, 2.0};
    const double denom = k * (k - e.q4() * e.q4());
    if (denom > 0.0) {
      const double c2 = e.q4() * e.q4() * m / denom;
      if (c2 <= 1.0) {
        cands[3] = std::sqrt(c2);
        cands[4] = -std::sqrt(c2);
      }
    }
    for (double c : cands) {
      if (c > 1.0) continue;
      const double v = 0.5 * (std::sqrt(std::max(0.0, k * c * c + m)) - e.q4() * c);
      cmin = std::min(cmin, v);
      cmax = std::max(cmax, v);
    }
    return {cmin, cmax};
  }
  // General orientation: 1 degree scan, then golden-section refinement.
  constexpr int n = 360;
  int imin = 0;
  int imax = 0;
  std::array<double, n> vals{};
  for (int k = 0; k < n; ++k) {
    vals[k] = e.cost(-kPi + 2.0 * kPi * k / n);
    if (vals[k] < vals[imin]) imin = k;
    if (vals[k] > vals[imax]) imax = k;
  }
  const double step = 2.0 * kPi / n;
  auto f = [&e](double b) { return e.cost(b); };
  const double bmin = -kPi + step * imin;
  const double bmax = -kPi + step * imax;
  cmin = std::min(vals[imin], golden_extremum(f, bmin - step, bmin + step, 1.0));
  cmax = std::max(vals[imax], golden_extremum(f, bmax - step, bmax + step, -1.0));
  return {cmin, cmax};
}

double anisotropy(const CostEllipse& e) {
  const CostRange r = cost_range(e);
  return r.max / r.min;
}

double isotropic_equivalent(const CostEllipse& e) { return 1.0 / std::sqrt(e.semi_axis_a() * e.semi_axis_b()); }

void CamisModel::validate() const {
  physics.validate();
  slip.validate();
  if (!(roll_weight.k >= 0.0)) throw ContractViolation("roll weight gain must be >= 0");
}

double CamisModel::direct_cost(double alpha, double beta) const {
  return eval_terms(cost_terms(alpha, physics, slip, roll_weight, compat_rho_squared), beta) * physics.scale();
}

bool CamisModel::direct_form_is_elliptic(double alpha) const {
  const LongLat t = cost_terms(alpha, physics, slip, roll_weight, compat_rho_squared);
  return t.x - t.z > 0.0;
}

}  // namespace camis
