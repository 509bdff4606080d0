#include "camis/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include <fmt/format.h>

#include "camis/errors.hpp"

namespace camis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Relative slack on stencil radii so nodes exactly at h * anisotropy are kept.
constexpr double kRadiusSlack = 1e-9;
constexpr double kGoldenTol = 1e-6;

Vec2 unit(const Vec2& v) {
  const double n = v.norm();
  return n > 0.0 ? Vec2(v / n) : Vec2(Vec2::UnitX());
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

std::string to_string(PlanMode mode) {
  return mode == PlanMode::Anisotropic ? "anisotropic" : "isotropic-equivalent";
}

PlanMode parse_plan_mode(const std::string& name) {
  if (name == "anisotropic") return PlanMode::Anisotropic;
  if (name == "isotropic-equivalent" || name == "isotropic") return PlanMode::IsotropicEquivalent;
  throw ConfigError("unknown mode '" + name + "' (expected anisotropic or isotropic-equivalent)");
}

// ---------------------------------------------------------------------------
// CostField

CostField::CostField(const HexTerrain& terrain, const CamisModel& model, PlanMode mode, double anisotropy_cap)
    : terrain_(&terrain), mode_(mode) {
  if (!(anisotropy_cap >= 1.0)) throw ContractViolation("anisotropy cap must be >= 1");
  model.validate();
  const std::size_t n = terrain.size();
  ellipses_.resize(n);
  scalar_.assign(n, 0.0);
  upsilon_.assign(n, 1.0);
  raw_upsilon_.assign(n, 1.0);
  usable_.assign(n, false);
  min_cost_ = kInf;
  max_cost_ = 0.0;
  double worst_raw = 1.0;
  for (std::size_t l = 0; l < n; ++l) {
    const HexNode& node = terrain.node(l);
    if (!node.valid) continue;
    try {
      ellipses_[l] = model.ellipse(node.steepness);
    } catch (const SlipSingularityError&) {
      ++excluded_;
      continue;
    } catch (const ContractViolation&) {
      ++excluded_;
      continue;
    }
    const CostRange range = cost_range(ellipses_[l]);
    raw_upsilon_[l] = range.max / range.min;
    worst_raw = std::max(worst_raw, raw_upsilon_[l]);
    if (mode == PlanMode::IsotropicEquivalent) {
      scalar_[l] = isotropic_equivalent(ellipses_[l]);
      upsilon_[l] = 1.0;
      min_cost_ = std::min(min_cost_, scalar_[l]);
      max_cost_ = std::max(max_cost_, scalar_[l]);
    } else {
      upsilon_[l] = std::min(raw_upsilon_[l], anisotropy_cap);
      if (raw_upsilon_[l] > anisotropy_cap) ++clamped_;
      min_cost_ = std::min(min_cost_, range.min);
      max_cost_ = std::max(max_cost_, range.max);
    }
    max_upsilon_ = std::max(max_upsilon_, upsilon_[l]);
    usable_[l] = true;
  }
  if (min_cost_ == kInf) min_cost_ = 0.0;
  if (clamped_ > 0) {
    warnings_.push_back(fmt::format("anisotropy above {} at {} nodes (max {}); stencil radius clamped",
                                    anisotropy_cap, clamped_, worst_raw));
  }
  if (excluded_ > 0) {
    warnings_.push_back(fmt::format("{} nodes excluded: cost model undefined at their steepness", excluded_));
  }
}

double CostField::cost(HexIndex idx, const Vec2& heading) const {
  const std::size_t l = terrain_->layout().linear(idx);
  if (mode_ == PlanMode::IsotropicEquivalent) return scalar_[l];
  return ellipses_[l].cost(beta(heading, terrain_->node(l).aspect));
}

// ---------------------------------------------------------------------------
// Local updates

bool upwind_condition(double candidate, double t1, double t2) { return candidate > std::min(t1, t2); }

std::optional<double> hex_closed_form(double t1, double t2, double h, double c) {
  const double hc = h * c;
  const double radicand = 3.0 * hc * hc - 3.0 * (t1 - t2) * (t1 - t2);
  if (radicand < 0.0) return std::nullopt;
  return 0.5 * (t1 + t2) + 0.5 * std::sqrt(radicand);
}

std::optional<Vec2> eulerian_psi(const Vec2& x, double T, const FrontPoint& a, const FrontPoint& b) {
  Eigen::Matrix2d m;
  m.row(0) = (x - a.position).transpose();
  m.row(1) = (x - b.position).transpose();
  const double det = m.determinant();
  const double scale = m.row(0).norm() * m.row(1).norm();
  if (!(std::abs(det) > 1e-12 * scale)) return std::nullopt;
  const Vec2 g = m.inverse() * Vec2(T - a.T, T - b.T);
  const double n = g.norm();
  if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
  return Vec2(g / n);
}

UpdateResult point_update(const Vec2& x, const FrontPoint& a, const DirectionalCost& cost) {
  const Vec2 d = x - a.position;
  const Vec2 dir = unit(d);
  return {a.T + cost(dir) * d.norm(), dir, Regime::Fallback, 1.0};
}

UpdateResult semi_lagrangian_update(const Vec2& x, const FrontPoint& a, const FrontPoint& b,
                                    const DirectionalCost& cost) {
  auto f = [&](double e) {
    const Vec2 d = x - (e * a.position + (1.0 - e) * b.position);
    const double len = d.norm();
    const double travel = len > 0.0 ? cost(Vec2(d / len)) * len : 0.0;
    return travel + e * a.T + (1.0 - e) * b.T;
  };
  constexpr double inv_phi = 0.61803398874989484820;
  double lo = 0.0;
  double hi = 1.0;
  double e1 = hi - inv_phi * (hi - lo);
  double e2 = lo + inv_phi * (hi - lo);
  double f1 = f(e1);
  double f2 = f(e2);
  while (hi - lo > kGoldenTol) {
    if (f1 <= f2) {
      hi = e2;
      e2 = e1;
      f2 = f1;
      e1 = hi - inv_phi * (hi - lo);
      f1 = f(e1);
    } else {
      lo = e1;
      e1 = e2;
      f1 = f2;
      e2 = lo + inv_phi * (hi - lo);
      f2 = f(e2);
    }
  }
  double best_e = 0.5 * (lo + hi);
  double best = f(best_e);
  for (double e : {1.0, 0.0}) {
    const double v = f(e);
    if (v < best) {
      best = v;
      best_e = e;
    }
  }
  const Vec2 dir = unit(x - (best_e * a.position + (1.0 - best_e) * b.position));
  return {best, dir, Regime::SemiLagrangian, best_e};
}

UpdateResult eulerian_update(const Vec2& x, const FrontPoint& a, const FrontPoint& b, double h, double c) {
  const double diff = std::abs(a.T - b.T);
  if (diff <= 0.5 * h * c) {
    if (const auto t = hex_closed_form(a.T, b.T, h, c); t && upwind_condition(*t, a.T, b.T)) {
      const auto psi = eulerian_psi(x, *t, a, b);
      const FrontPoint& lower = a.T <= b.T ? a : b;
      return {*t, psi ? *psi : unit(x - lower.position), Regime::Eulerian, kNaN};
    }
  }
  const bool first = a.T <= b.T;
  const FrontPoint& lower = first ? a : b;
  return {lower.T + h * c, unit(x - lower.position), Regime::Fallback, first ? 1.0 : 0.0};
}

UpdateResult update_T(const Vec2& x, const std::vector<std::pair<FrontPoint, FrontPoint>>& pairs,
                      const std::vector<FrontPoint>& singles, const DirectionalCost& cost, double anisotropy,
                      double h) {
  UpdateResult best;
  auto keep = [&best](const UpdateResult& r) {
    if (r.T < best.T) best = r;
  };
  if (anisotropy > 1.0) {
    for (const auto& [a, b] : pairs) keep(semi_lagrangian_update(x, a, b, cost));
    for (const auto& a : singles) {
      UpdateResult r = point_update(x, a, cost);
      r.regime = Regime::SemiLagrangian;
      keep(r);
    }
  } else {
    const double c = cost(Vec2::UnitX());
    for (const auto& [a, b] : pairs) keep(eulerian_update(x, a, b, h, c));
    for (const auto& a : singles) keep(point_update(x, a, cost));
  }
  return best;
}

// ---------------------------------------------------------------------------
// SolverSide

SolverSide::SolverSide(SideLabel label, const CostField& field) : label_(label), field_(&field) {
  const std::size_t n = field.terrain().size();
  state_.assign(n, NodeState::Far);
  T_.assign(n, kInf);
  psi_.assign(n, kNaN);
  const double reach = field.max_anisotropy() * (1.0 + kRadiusSlack);
  const int rings = static_cast<int>(std::ceil(reach / (std::sqrt(3.0) / 2.0))) + 1;
  for (int dj = -rings; dj <= rings; ++dj) {
    for (int di = -rings; di <= rings; ++di) {
      const HexIndex off{di, dj};
      if (di == 0 && dj == 0) continue;
      const double d = hex_position(off, 1.0).norm();
      if (d <= reach) offsets_.emplace_back(off, d);
    }
  }
  std::stable_sort(offsets_.begin(), offsets_.end(),
                   [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
}

double SolverSide::reported_psi(HexIndex idx) const {
  const double s = psi_[lin(idx)];
  if (std::isnan(s) || label_ == SideLabel::FromStart) return s;
  return wrap_angle(s + kPi);
}

bool SolverSide::frontier_empty() const {
  // Stale entries may remain; only a live Considered entry counts.
  auto copy = frontier_;
  while (!copy.empty()) {
    const auto [t, i, j] = copy.top();
    copy.pop();
    const HexIndex idx{i, j};
    if (state_[lin(idx)] == NodeState::Considered && T_[lin(idx)] == t) return false;
  }
  return true;
}

double SolverSide::cost_at(HexIndex x, const Vec2& dir) const {
  return label_ == SideLabel::FromStart ? field_->cost(x, dir) : field_->cost(x, Vec2(-dir));
}

void SolverSide::push_considered(HexIndex x, double T, double psi) {
  const std::size_t l = lin(x);
  if (is_accepted(state_[l])) throw ContractViolation("push_considered on an accepted node");
  state_[l] = NodeState::Considered;
  if (T < T_[l]) {
    T_[l] = T;
    psi_[l] = psi;
    frontier_.emplace(T, x.i, x.j);
  }
}

void SolverSide::seed(HexIndex source) {
  if (!field_->usable(source)) throw ContractViolation("source node is not a usable terrain node");
  const std::size_t l = lin(source);
  source_ = source;
  state_[l] = NodeState::AcceptedFront;
  T_[l] = 0.0;
  psi_[l] = kNaN;
  last_accepted_ = 0.0;
  update_neighbours(source);
}

std::optional<HexIndex> SolverSide::get_next_node() {
  while (!frontier_.empty()) {
    const auto [t, i, j] = frontier_.top();
    frontier_.pop();
    const HexIndex idx{i, j};
    const std::size_t l = lin(idx);
    if (state_[l] != NodeState::Considered || T_[l] != t) continue;
    state_[l] = NodeState::AcceptedFront;
    ++expanded_;
    if (t < last_accepted_ - 1e-9 * std::max(1.0, last_accepted_)) ++violations_;
    last_accepted_ = std::max(last_accepted_, t);
    return idx;
  }
  return std::nullopt;
}

std::vector<std::pair<HexIndex, HexIndex>> SolverSide::accepted_front_within(HexIndex x, double anisotropy) const {
  const HexLayout& layout = field_->terrain().layout();
  const double h = layout.resolution();
  const double xi = h * anisotropy * (1.0 + kRadiusSlack);
  const Vec2 px = layout.position(x);
  std::vector<std::pair<HexIndex, HexIndex>> pairs;
  for (const auto& [off, d] : offsets_) {
    if (d > anisotropy * (1.0 + kRadiusSlack)) break;
    const HexIndex a{x.i + off.i, x.j + off.j};
    if (!layout.contains(a) || state_[lin(a)] != NodeState::AcceptedFront) continue;
    for (const HexIndex& b : neighborhood(a)) {
      if (!(a < b) || !layout.contains(b) || state_[lin(b)] != NodeState::AcceptedFront) continue;
      if ((layout.position(b) - px).norm() <= xi) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

UpdateResult SolverSide::full_update(HexIndex x) const {
  const HexLayout& layout = field_->terrain().layout();
  const double ups = field_->anisotropy(x);
  std::vector<std::pair<FrontPoint, FrontPoint>> pairs;
  std::vector<FrontPoint> singles;
  auto point = [&](HexIndex n) { return FrontPoint{layout.position(n), T_[lin(n)]}; };
  for (const auto& [a, b] : accepted_front_within(x, ups)) pairs.emplace_back(point(a), point(b));
  for (const auto& [off, d] : offsets_) {
    if (d > ups * (1.0 + kRadiusSlack)) break;
    const HexIndex a{x.i + off.i, x.j + off.j};
    if (layout.contains(a) && state_[lin(a)] == NodeState::AcceptedFront) singles.push_back(point(a));
  }
  const Vec2 px = layout.position(x);
  return update_T(px, pairs, singles, [&](const Vec2& dir) { return cost_at(x, dir); }, ups, layout.resolution());
}

UpdateResult SolverSide::incremental_update(HexIndex x, HexIndex accepted) const {
  const HexLayout& layout = field_->terrain().layout();
  const double ups = field_->anisotropy(x);
  const double xi = layout.resolution() * ups * (1.0 + kRadiusSlack);
  const Vec2 px = layout.position(x);
  const FrontPoint pa{layout.position(accepted), T_[lin(accepted)]};
  std::vector<std::pair<FrontPoint, FrontPoint>> pairs;
  for (const HexIndex& b : neighborhood(accepted)) {
    if (!layout.contains(b) || state_[lin(b)] != NodeState::AcceptedFront) continue;
    const Vec2 pb = layout.position(b);
    if ((pb - px).norm() > xi) continue;
    // Keep the member order used by accepted_front_within.
    if (accepted < b) {
      pairs.emplace_back(pa, FrontPoint{pb, T_[lin(b)]});
    } else {
      pairs.emplace_back(FrontPoint{pb, T_[lin(b)]}, pa);
    }
  }
  return update_T(px, pairs, {pa}, [&](const Vec2& dir) { return cost_at(x, dir); }, ups, layout.resolution());
}

void SolverSide::apply(HexIndex x, const UpdateResult& r) {
  const std::size_t l = lin(x);
  if (!(r.T < T_[l])) return;
  T_[l] = r.T;
  psi_[l] = heading_angle(r.psi);
  ++regimes_[static_cast<std::size_t>(r.regime)];
  frontier_.emplace(r.T, x.i, x.j);
}

void SolverSide::refresh_front_status(HexIndex x) {
  const std::size_t l = lin(x);
  if (state_[l] != NodeState::AcceptedFront) return;
  for (const HexIndex& n : neighborhood(x)) {
    if (field_->usable(n) && !is_accepted(state_[lin(n)])) return;
  }
  state_[l] = NodeState::AcceptedInner;
}

void SolverSide::update_neighbours(HexIndex x) {
  const HexLayout& layout = field_->terrain().layout();
  refresh_front_status(x);
  for (const HexIndex& n : neighborhood(x)) {
    if (layout.contains(n)) refresh_front_status(n);
  }

  std::array<HexIndex, 6> fresh{};
  std::size_t n_fresh = 0;
  for (const HexIndex& n : neighborhood(x)) {
    if (!field_->usable(n) || state_[lin(n)] != NodeState::Far) continue;
    state_[lin(n)] = NodeState::Considered;
    apply(n, full_update(n));
    fresh[n_fresh++] = n;
  }

  if (state_[lin(x)] != NodeState::AcceptedFront) return;
  const double reach = field_->max_anisotropy() * (1.0 + kRadiusSlack);
  for (const auto& [off, d] : offsets_) {
    if (d > reach) break;
    const HexIndex y{x.i + off.i, x.j + off.j};
    if (!field_->usable(y) || state_[lin(y)] != NodeState::Considered) continue;
    if (d > field_->anisotropy(y) * (1.0 + kRadiusSlack)) continue;
    if (std::find(fresh.begin(), fresh.begin() + n_fresh, y) != fresh.begin() + n_fresh) continue;
    apply(y, incremental_update(y, x));
  }
}

bool check_fin_condition(const SolverSide& s0, const SolverSide& sg, HexIndex idx) {
  return is_accepted(s0.state(idx)) && is_accepted(sg.state(idx));
}

// ---------------------------------------------------------------------------
// Path extraction

double polyline_length(const std::vector<Vec2>& polyline) {
  double len = 0.0;
  for (std::size_t k = 1; k < polyline.size(); ++k) len += (polyline[k] - polyline[k - 1]).norm();
  return len;
}

std::vector<Vec2> resample_polyline(const std::vector<Vec2>& polyline, double step) {
  if (!(step > 0.0)) throw ContractViolation("resampling step must be positive");
  if (polyline.empty()) return {};
  const double total = polyline_length(polyline);
  if (total == 0.0) return {polyline.front()};
  const auto n = static_cast<std::size_t>(std::ceil(total / step - 1e-9));
  const double spacing = total / static_cast<double>(n);
  std::vector<Vec2> out;
  out.reserve(n + 1);
  out.push_back(polyline.front());
  std::size_t seg = 1;
  double seg_start = 0.0;
  double seg_len = (polyline[1] - polyline[0]).norm();
  for (std::size_t k = 1; k < n; ++k) {
    const double s = spacing * static_cast<double>(k);
    while (seg + 1 < polyline.size() && seg_start + seg_len < s) {
      seg_start += seg_len;
      ++seg;
      seg_len = (polyline[seg] - polyline[seg - 1]).norm();
    }
    const double t = seg_len > 0.0 ? std::clamp((s - seg_start) / seg_len, 0.0, 1.0) : 0.0;
    out.push_back(polyline[seg - 1] + t * (polyline[seg] - polyline[seg - 1]));
  }
  out.push_back(polyline.back());
  return out;
}

namespace {

// Direction back toward the side's source at p: the interpolated reverse of
// the stored propagation field, or straight at the target where undefined.
Vec2 descent_direction(const SolverSide& side, const Vec2& p, const Vec2& target) {
  const HexLayout& layout = side.field().terrain().layout();
  const HexTriangle tri = layout.locate(p);
  Vec2 sum = Vec2::Zero();
  for (int k = 0; k < 3; ++k) {
    if (tri.weights[k] <= 0.0 || !layout.contains(tri.nodes[k])) continue;
    const double psi = side.stored_psi(tri.nodes[k]);
    if (std::isnan(psi)) continue;
    sum -= tri.weights[k] * Vec2(std::cos(psi), std::sin(psi));
  }
  const double n = sum.norm();
  if (n > 1e-12) return sum / n;
  return unit(target - p);
}

std::vector<Vec2> trace(const SolverSide& side, const Vec2& from, const Vec2& target, double h, double step) {
  std::vector<Vec2> pts{from};
  const double dist0 = (target - from).norm();
  if (dist0 == 0.0) return pts;
  const auto budget = static_cast<std::size_t>(std::ceil(10.0 * dist0 / step));
  Vec2 p = from;
  for (std::size_t k = 0; k <= budget; ++k) {
    if ((target - p).norm() <= h) {
      pts.push_back(target);
      return pts;
    }
    p += step * descent_direction(side, p, target);
    pts.push_back(p);
  }
  throw DivergenceError(fmt::format("path integration exceeded {} steps near ({}, {})", budget, p.x(), p.y()));
}

}  // namespace

std::vector<Vec2> extract_path(const SolverSide& s0, const SolverSide& sg, HexIndex meeting, double step) {
  const HexLayout& layout = s0.field().terrain().layout();
  const double h = layout.resolution();
  if (!(step > 0.0 && step <= h * (1.0 + 1e-12))) throw ContractViolation("path step must lie in (0, h]");
  if (s0.state(meeting) == NodeState::Far || sg.state(meeting) == NodeState::Far) {
    throw ContractViolation("meeting node was not reached by both sides");
  }
  const Vec2 pm = layout.position(meeting);
  std::vector<Vec2> back = trace(s0, pm, layout.position(s0.source()), h, step);
  const std::vector<Vec2> fwd = trace(sg, pm, layout.position(sg.source()), h, step);
  std::reverse(back.begin(), back.end());
  back.insert(back.end(), fwd.begin() + 1, fwd.end());
  return back;
}

// ---------------------------------------------------------------------------
// Planning

std::unique_ptr<SolverSide> solve_field(HexIndex source, const CostField& field, std::optional<HexIndex> target) {
  auto side = std::make_unique<SolverSide>(SideLabel::FromStart, field);
  side->seed(source);
  if (target && *target == source) return side;
  while (const auto x = side->get_next_node()) {
    side->update_neighbours(*x);
    if (target && *x == *target) break;
  }
  return side;
}

PlanResult plan(HexIndex start, HexIndex goal, std::shared_ptr<const CostField> field, const SolverOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (start == goal) throw ContractViolation("start and goal must differ");
  if (!field->usable(start)) throw ContractViolation(fmt::format("start node ({}, {}) is not usable", start.i, start.j));
  if (!field->usable(goal)) throw ContractViolation(fmt::format("goal node ({}, {}) is not usable", goal.i, goal.j));

  PlanResult result;
  result.field = field;
  result.start = start;
  result.goal = goal;
  result.from_start = std::make_unique<SolverSide>(SideLabel::FromStart, *field);
  result.from_goal = std::make_unique<SolverSide>(SideLabel::FromGoal, *field);
  SolverSide& s0 = *result.from_start;
  SolverSide& sg = *result.from_goal;
  s0.seed(start);
  sg.seed(goal);

  const std::array<SolverSide*, 2> order = options.first_side == SideLabel::FromGoal
                                               ? std::array<SolverSide*, 2>{&sg, &s0}
                                               : std::array<SolverSide*, 2>{&s0, &sg};
  std::optional<HexIndex> meeting;
  while (!meeting) {
    for (SolverSide* side : order) {
      const auto x = side->get_next_node();
      if (!x) {
        throw UnreachableError(fmt::format("{} frontier exhausted before the wavefronts met",
                                           side->label() == SideLabel::FromStart ? "start" : "goal"));
      }
      side->update_neighbours(*x);
      if (check_fin_condition(s0, sg, *x)) {
        meeting = *x;
        break;
      }
    }
  }
  // The first node accepted by both sides closes the search; the junction is
  // the node with the least combined cost among those accepted on at least one
  // side and reached by both.
  HexIndex best = *meeting;
  double best_total = s0.T(best) + sg.T(best);
  const HexLayout& layout = field->terrain().layout();
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const NodeState a = s0.states()[l];
    const NodeState b = sg.states()[l];
    if (!(is_accepted(a) && b != NodeState::Far) && !(is_accepted(b) && a != NodeState::Far)) continue;
    const double total = s0.T_field()[l] + sg.T_field()[l];
    if (total < best_total) {
      best_total = total;
      best = layout.index(l);
    }
  }
  result.meeting = best;
  result.total_cost = best_total;

  const double h = field->terrain().resolution();
  result.path_step = options.path_step > 0.0 ? options.path_step : 0.5 * h;
  result.path = resample_polyline(extract_path(s0, sg, best, result.path_step), result.path_step);

  PlanDiagnostics& diag = result.diagnostics;
  diag.expanded = {s0.expanded(), sg.expanded()};
  for (std::size_t k = 0; k < 3; ++k) diag.regime_counts[k] = s0.regime_counts()[k] + sg.regime_counts()[k];
  diag.monotonicity_violations = s0.monotonicity_violations() + sg.monotonicity_violations();
  diag.excluded_nodes = field->excluded_nodes();
  diag.clamped_nodes = field->clamped_nodes();
  diag.max_anisotropy = field->max_anisotropy();
  diag.warnings = field->warnings();
  diag.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

PlanResult plan(HexIndex start, HexIndex goal, const HexTerrain& terrain, const CamisModel& model, PlanMode mode,
                const SolverOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  auto field = std::make_shared<const CostField>(terrain, model, mode, options.anisotropy_cap);
  PlanResult r = plan(start, goal, std::move(field), options);
  r.diagnostics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace camis
