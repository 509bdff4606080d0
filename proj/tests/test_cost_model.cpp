#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "camis/cost_model.hpp"
#include "camis/errors.hpp"
#include "camis/oracle.hpp"

using namespace camis;

namespace {

PhysicalParams unit_physics(double rho = 0.45, double margin_deg = 15.0) {
  PhysicalParams p;
  p.rho = rho;
  p.mass = 1.0;
  p.gravity = 1.0;
  p.speed = 1.0;
  p.alpha_margin = deg2rad(margin_deg);
  return p;
}

CamisModel unit_model(double rho = 0.45) {
  CamisModel m;
  m.physics = unit_physics(rho);
  return m;
}

// Reference braking curve: bisection on the monotone alpha(t).
double ref_bezier(double alpha, double rho, double margin) {
  const double a1 = std::atan(rho);
  const double a0 = std::max(0.0, a1 - margin);
  const double a2 = a1 + margin;
  const double c0 = rho - std::tan(a0);
  const double c2 = std::tan(a2) - rho;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double t = 0.5 * (lo + hi);
    const double at = (1 - t) * (1 - t) * a0 + 2 * t * (1 - t) * a1 + t * t * a2;
    (at < alpha ? lo : hi) = t;
  }
  const double t = 0.5 * (lo + hi);
  return (1 - t) * (1 - t) * c0 + t * t * c2;
}

// Reference closed-form cost with unit m g / v.
double ref_direct(double alpha, double beta, double rho, double margin, double sr = 0.0, double sa = 0.0,
                  double k = 0.0) {
  const double w = 1.0 + k * std::tan(alpha);
  const double a1 = std::atan(rho);
  const double lat = rho * std::cos(alpha) * w * std::sin(beta) / std::cos(sa);
  if (a1 - margin < alpha && alpha < a1 + margin) {
    const double rb = ref_bezier(alpha, rho, margin);
    const double lon = (rho + std::tan(alpha) + rb) * std::cos(beta) / (2 * (1 - sr));
    return std::abs(std::hypot(lon, lat) - (rho + std::tan(alpha) - rb) / 2 * std::cos(beta));
  }
  const double lon = rho * std::cos(beta) / (1 - sr);
  return std::abs(std::hypot(lon, lat) - std::tan(alpha) * std::cos(beta));
}

// Reference polar root by bisection on the conic along the ray.
double ref_conic_cost(const CostEllipse& e, double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  auto f = [&](double r) {
    return e.q1() * c * c * r * r + e.q3() * s * s * r * r + (e.q4() * c + e.q5() * s) * r + 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

}  // namespace

TEST(Angles, Beta) {
  EXPECT_NEAR(beta(Vec2(0.6, 0.8), Vec2(0.6, 0.8)), 0.0, 1e-15);
  EXPECT_NEAR(beta(Vec2(0, 1), Vec2(1, 0)), kPi / 2, 1e-15);
  EXPECT_NEAR(std::abs(beta(Vec2(-1, 0), Vec2(1, 0))), kPi, 1e-15);
  EXPECT_THROW(beta(Vec2(0, 0), Vec2(1, 0)), ContractViolation);
}

TEST(Angles, PitchAndRoll) {
  const double a = deg2rad(20.0);
  EXPECT_NEAR(pitch(a, 0.0), a, 1e-15);
  EXPECT_NEAR(pitch(a, kPi / 2), 0.0, 1e-15);
  EXPECT_NEAR(pitch(a, kPi), -a, 1e-15);
  EXPECT_NEAR(roll(deg2rad(15.0), 0.0), 0.0, 1e-15);
  EXPECT_NEAR(roll(deg2rad(15.0), kPi / 2), deg2rad(15.0), 1e-15);
  for (double b = -kPi; b <= kPi; b += 0.3) EXPECT_EQ(roll(0.0, b), 0.0);
}

TEST(Angles, NormalFromPitchRollMatchesTilt) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.0, 1.4), ub(-kPi, kPi);
  for (int k = 0; k < 1000; ++k) {
    const double a = ua(rng), b = ub(rng);
    // Surface normal in the body frame from the slopes tan(theta), tan(phi).
    const double tt = std::tan(pitch(a, b)), tp = std::tan(roll(a, b));
    const double nz = 1.0 / std::sqrt(1.0 + tt * tt + tp * tp);
    EXPECT_NEAR(std::acos(nz), a, 1e-9);
  }
}

TEST(Rowe, Examples) {
  PhysicalParams p = unit_physics();
  EXPECT_DOUBLE_EQ(rowe_resistance(0.0, 0.0, p), 0.45);
  EXPECT_NEAR(rowe_resistance(deg2rad(10), deg2rad(10), p), 0.27367301929153504, 1e-12);
  const double t = std::atan(0.45);
  EXPECT_NEAR(rowe_resistance(t, t, p), 0.0, 1e-15);
  EXPECT_THROW(rowe_resistance(0.1, 0.2, p), ContractViolation);
}

TEST(Bezier, EndpointsAndMiddle) {
  const PhysicalParams p = unit_physics(0.3);
  const BrakingBand band = braking_band(p);
  EXPECT_NEAR(bezier_braking(band.lower, p), 0.3 - std::tan(band.lower), 1e-12);
  EXPECT_NEAR(bezier_braking(band.upper, p), std::tan(band.upper) - 0.3, 1e-12);
  const double mid = bezier_braking(std::atan(0.3), p);
  EXPECT_GT(mid, 0.0);
  EXPECT_NEAR(mid, 0.14698206524927174, 1e-12);
  EXPECT_THROW(bezier_braking(band.upper + 0.01, p), ContractViolation);
}

TEST(Bezier, MatchesBisectionOracle) {
  for (double rho : {0.1, 0.3, 0.45, 0.9}) {
    const PhysicalParams p = unit_physics(rho);
    const BrakingBand band = braking_band(p);
    for (int k = 0; k <= 200; ++k) {
      const double a = band.lower + (band.upper - band.lower) * k / 200.0;
      EXPECT_NEAR(bezier_braking(a, p), ref_bezier(a, rho, p.alpha_margin), 1e-12);
      EXPECT_GT(bezier_braking(a, p), 0.0);
    }
  }
}

TEST(Directional, FlatAnchorsEqualRho) {
  const auto d = directional_costs(0.0, unit_physics(), SlipModel{}, RollWeight{});
  EXPECT_DOUBLE_EQ(d.descent, 0.45);
  EXPECT_DOUBLE_EQ(d.ascent, 0.45);
  EXPECT_DOUBLE_EQ(d.lateral1, 0.45);
  EXPECT_DOUBLE_EQ(d.lateral2, 0.45);
}

TEST(Directional, FrozenAnchorsAt15Deg) {
  const double a = deg2rad(15.0);
  const auto d = directional_costs(a, unit_physics(), SlipModel{}, RollWeight{});
  EXPECT_NEAR(d.ascent, 0.7179491924311228, 1e-12);
  EXPECT_NEAR(d.ascent, 0.45 + std::tan(a), 1e-12);
  EXPECT_NEAR(d.descent, 0.20109769205808636, 1e-12);
  EXPECT_NEAR(d.lateral1, 0.43466662183008076, 1e-12);
}

TEST(Directional, RollWeightScalesLaterals) {
  const double a = deg2rad(15.0);
  const auto d0 = directional_costs(a, unit_physics(), SlipModel{}, RollWeight{0.0});
  const auto d6 = directional_costs(a, unit_physics(), SlipModel{}, RollWeight{6.0});
  EXPECT_NEAR(d6.lateral1 / d0.lateral1, 1.0 + 6.0 * std::tan(a), 1e-12);
  EXPECT_EQ(d6.ascent, d0.ascent);
  EXPECT_EQ(d6.descent, d0.descent);
}

TEST(Directional, RollWeightMonotoneInK) {
  for (double a_deg = 1.0; a_deg < 40.0; a_deg += 3.0) {
    double prev = 0.0;
    for (double k = 0.0; k <= 8.0; k += 0.5) {
      const auto d = directional_costs(deg2rad(a_deg), unit_physics(), SlipModel{}, RollWeight{k});
      EXPECT_GT(d.lateral1, prev);
      prev = d.lateral1;
    }
  }
}

TEST(Directional, SlipSingularityNamesCurve) {
  SlipModel ratio{SlipFamily::Linear, 2.0, 0.0};
  try {
    directional_costs(deg2rad(30.0), unit_physics(), ratio, RollWeight{});
    FAIL();
  } catch (const SlipSingularityError& e) {
    EXPECT_NE(std::string(e.what()).find("slip ratio"), std::string::npos);
  }
  SlipModel angle{SlipFamily::Linear, 0.0, 5.0};
  try {
    directional_costs(deg2rad(30.0), unit_physics(), angle, RollWeight{});
    FAIL();
  } catch (const SlipSingularityError& e) {
    EXPECT_NE(std::string(e.what()).find("slip angle"), std::string::npos);
  }
}

TEST(Slip, FamiliesStartAtZeroAndIncrease) {
  for (auto fam : {SlipFamily::Linear, SlipFamily::Exponential}) {
    SlipModel s{fam, 0.7, 0.4};
    EXPECT_EQ(s.ratio(0.0), 0.0);
    EXPECT_EQ(s.angle(0.0), 0.0);
    double pr = 0.0, pa = 0.0;
    for (double a = 0.0; a < s.clamp_steepness(); a += 0.01) {
      EXPECT_GE(s.ratio(a), pr);
      EXPECT_GE(s.angle(a), pa);
      pr = s.ratio(a);
      pa = s.angle(a);
      EXPECT_FALSE(s.singular(a));
    }
    EXPECT_TRUE(s.singular(s.clamp_steepness() + 1e-9));
  }
  EXPECT_EQ(SlipModel{}.clamp_steepness(), kPi / 2);
}

TEST(Slip, AscentCostNonDecreasingInSlipRatio) {
  const double a = deg2rad(12.0);
  double prev = 0.0;
  for (double cr = 0.0; cr <= 1.5; cr += 0.1) {
    const auto d = directional_costs(a, unit_physics(), SlipModel{SlipFamily::Linear, cr, 0.0}, RollWeight{});
    EXPECT_GE(d.ascent, prev);
    prev = d.ascent;
  }
}

TEST(Ellipse, CircleFromEqualAnchors) {
  const auto e = ellipse_from_anchors({2.0, 2.0, 2.0, 2.0});
  EXPECT_EQ(e.q4(), 0.0);
  EXPECT_EQ(e.q5(), 0.0);
  EXPECT_DOUBLE_EQ(e.semi_axis_a(), 0.5);
  EXPECT_DOUBLE_EQ(e.semi_axis_b(), 0.5);
  EXPECT_DOUBLE_EQ(anisotropy(e), 1.0);
  EXPECT_DOUBLE_EQ(isotropic_equivalent(e), 2.0);
}

TEST(Ellipse, Coefficients) {
  const auto e = ellipse_from_anchors({0.2, 0.8, 0.4, 0.4});
  EXPECT_DOUBLE_EQ(e.q1(), -0.16);
  EXPECT_EQ(e.q2(), 0.0);
  EXPECT_DOUBLE_EQ(e.q3(), -0.16);
  EXPECT_DOUBLE_EQ(e.q4(), 0.6);
  EXPECT_EQ(e.q5(), 0.0);
  EXPECT_NEAR(eval_cost(e, 0.0), 0.2, 1e-12);
  EXPECT_NEAR(eval_cost(e, kPi), 0.8, 1e-12);
  EXPECT_NEAR(anisotropy(e), 4.0, 1e-12);
}

TEST(Ellipse, EqualAreaCostUsesTrueSemiAxes) {
  // The 0.2/0.8/0.4/0.4 conic is a circle of radius 3.125 about (1.875, 0).
  const auto e = ellipse_from_anchors({0.2, 0.8, 0.4, 0.4});
  EXPECT_NEAR(e.semi_axis_a(), 3.125, 1e-12);
  EXPECT_NEAR(e.semi_axis_b(), 3.125, 1e-12);
  EXPECT_NEAR(e.center().x(), 1.875, 1e-12);
  EXPECT_NEAR(isotropic_equivalent(e), 0.32, 1e-12);
}

TEST(Ellipse, RejectsNonPositiveAnchor) {
  EXPECT_THROW(ellipse_from_anchors({0.0, 1.0, 1.0, 1.0}), ContractViolation);
  EXPECT_THROW(ellipse_from_anchors({1.0, -1.0, 1.0, 1.0}), ContractViolation);
}

TEST(Ellipse, AnchorRecoveryProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int k = 0; k < 2000; ++k) {
    const DirectionalCosts d{u(rng), u(rng), u(rng), u(rng)};
    const auto e = ellipse_from_anchors(d);
    EXPECT_NEAR(e.cost(0.0), d.descent, 1e-9 * d.descent);
    EXPECT_NEAR(e.cost(kPi), d.ascent, 1e-9 * d.ascent);
    EXPECT_NEAR(e.cost(kPi / 2), d.lateral1, 1e-9 * d.lateral1);
    EXPECT_NEAR(e.cost(-kPi / 2), d.lateral2, 1e-9 * d.lateral2);
  }
}

TEST(Ellipse, PolarRootMatchesBisection) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.05, 5.0), ub(-kPi, kPi);
  for (int k = 0; k < 500; ++k) {
    const auto e = ellipse_from_anchors({u(rng), u(rng), u(rng), u(rng)});
    const double b = ub(rng);
    EXPECT_NEAR(e.cost(b), ref_conic_cost(e, b), 1e-9 * e.cost(b));
  }
}

TEST(Ellipse, RangeMatchesDenseSampling) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int k = 0; k < 300; ++k) {
    DirectionalCosts d{u(rng), u(rng), u(rng), u(rng)};
    if (k % 2 == 0) d.lateral2 = d.lateral1;
    const auto e = ellipse_from_anchors(d);
    const CostRange r = cost_range(e);
    const CostRange s = sampled_cost_range(e, 360000);
    // sampling can only miss the extremes inward
    EXPECT_LE(r.min, s.min * (1 + 1e-12));
    EXPECT_GE(r.max, s.max * (1 - 1e-12));
    EXPECT_NEAR(r.min, s.min, 1e-6 * s.min);
    EXPECT_NEAR(r.max, s.max, 1e-6 * s.max);
  }
}

TEST(Ellipse, EqualAreaCostBetweenExtremes) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const auto e = ellipse_from_anchors({u(rng), u(rng), u(rng), u(rng)});
    const CostRange r = cost_range(e);
    const double cn = isotropic_equivalent(e);
    EXPECT_GE(cn, r.min * (1 - 1e-12));
    EXPECT_LE(cn, r.max * (1 + 1e-12));
  }
}

TEST(Ellipse, SpeedProfileConvex) {
  for (double rho : {0.3, 0.6, 0.9}) {
    const CamisModel m = unit_model(rho);
    for (double a_deg = 0.0; a_deg <= 45.0; a_deg += 2.5) {
      const auto e = m.ellipse(deg2rad(a_deg));
      std::vector<Vec2> pts;
      for (int b = 0; b < 360; ++b) {
        const double br = deg2rad(b);
        pts.push_back(Vec2(std::cos(br), std::sin(br)) / e.cost(br));
      }
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Vec2 e1 = pts[(k + 1) % 360] - pts[k];
        const Vec2 e2 = pts[(k + 2) % 360] - pts[(k + 1) % 360];
        EXPECT_GT(e1.x() * e2.y() - e1.y() * e2.x(), 0.0);
      }
    }
  }
}

TEST(Model, EllipseMatchesDirectFormAt60Deg) {
  const CamisModel m = unit_model();
  const double a = deg2rad(15.0);
  EXPECT_NEAR(m.cost(a, kPi / 3), 0.3117993158867221, 1e-6 * 0.3117993158867221);
  EXPECT_NEAR(m.direct_cost(a, kPi / 3), ref_direct(a, kPi / 3, 0.45, a), 1e-12);
}

TEST(Model, DirectFormMatchesReference) {
  for (double rho : {0.3, 0.6, 0.9}) {
    CamisModel m = unit_model(rho);
    m.slip = {SlipFamily::Linear, 0.3, 0.2};
    m.roll_weight.k = 2.0;
    for (double a_deg = 0.0; a_deg < 40.0; a_deg += 1.5) {
      const double a = deg2rad(a_deg);
      for (int b = -180; b <= 180; b += 7) {
        const double br = deg2rad(b);
        EXPECT_NEAR(m.direct_cost(a, br),
                    ref_direct(a, br, rho, m.physics.alpha_margin, m.slip.ratio(a), m.slip.angle(a), 2.0), 1e-12);
      }
    }
  }
}

TEST(Model, FlatIsIsotropic) {
  EXPECT_EQ(anisotropy(unit_model().ellipse(0.0)), 1.0);
  EXPECT_EQ(anisotropy(CamisModel{}.ellipse(0.0)), 1.0);
}

TEST(Model, AnisotropyGrowsWithSteepness) {
  const CamisModel m = unit_model(0.3);
  double prev = 0.0;
  for (double a = 0.0; a <= 20.0; a += 5.0) {
    const double u = anisotropy(m.ellipse(deg2rad(a)));
    EXPECT_GE(u, prev);
    prev = u;
  }
  prev = 0.0;
  for (double a = 0.0; a <= 19.0; a += 1.0) {
    const double u = anisotropy(m.ellipse(deg2rad(a)));
    EXPECT_GE(u, prev);
    prev = u;
  }
  // The braking curve makes the trend turn just before 20 degrees.
  EXPECT_LT(anisotropy(m.ellipse(deg2rad(20.0))), anisotropy(m.ellipse(deg2rad(19.0))));
}

TEST(Model, BrakingContinuityAtBandEdges) {
  const CamisModel m = unit_model(0.3);
  const BrakingBand band = braking_band(m.physics);
  for (double edge : {band.lower, band.upper}) {
    if (edge <= 1e-9) continue;
    EXPECT_LT(std::abs(m.cost(edge + 1e-9, 0.0) - m.cost(edge - 1e-9, 0.0)), 1e-6);
  }
  for (double a = 0.0; a <= 45.0; a += 0.25) EXPECT_GT(m.cost(deg2rad(a), 0.0), 0.0);
}

TEST(Model, ScalingByMass) {
  CamisModel m = unit_model();
  CamisModel m3 = m;
  m3.physics.mass *= 3.0;
  for (double a_deg : {0.0, 7.0, 15.0, 30.0}) {
    const double a = deg2rad(a_deg);
    const auto e = m.ellipse(a), e3 = m3.ellipse(a);
    EXPECT_NEAR(anisotropy(e3), anisotropy(e), 1e-9);
    for (double b = -3.0; b <= 3.0; b += 0.5) EXPECT_NEAR(e3.cost(b), 3.0 * e.cost(b), 1e-12);
  }
}

TEST(Model, ValidateRejectsBadParameters) {
  CamisModel m;
  m.physics.rho = 1.2;
  EXPECT_THROW(m.validate(), ContractViolation);
  m = CamisModel{};
  m.physics.speed = 0.0;
  EXPECT_THROW(m.validate(), ContractViolation);
  m = CamisModel{};
  m.roll_weight.k = -1.0;
  EXPECT_THROW(m.validate(), ContractViolation);
  EXPECT_THROW(parse_slip_family("quadratic"), ConfigError);
}
