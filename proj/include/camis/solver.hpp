#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "camis/cost_model.hpp"
#include "camis/hex_terrain.hpp"

namespace camis {

enum class NodeState : std::uint8_t { Far, Considered, AcceptedFront, AcceptedInner };
enum class SideLabel : std::uint8_t { FromStart, FromGoal };
enum class PlanMode : std::uint8_t { Anisotropic, IsotropicEquivalent };
enum class Regime : std::uint8_t { SemiLagrangian = 0, Eulerian = 1, Fallback = 2 };

std::string to_string(PlanMode mode);
PlanMode parse_plan_mode(const std::string& name);

inline bool is_accepted(NodeState s) { return s == NodeState::AcceptedFront || s == NodeState::AcceptedInner; }

struct SolverOptions {
  double anisotropy_cap = 10.0;
  SideLabel first_side = SideLabel::FromGoal;
  /// Path integration step; 0 selects h/2.
  double path_step = 0.0;
};

/// Per-node cost description used by the solver: the CAMIS ellipse in
/// anisotropic mode, the equal-area scalar C_n in isotropic mode.
class CostField {
 public:
  CostField(const HexTerrain& terrain, const CamisModel& model, PlanMode mode, double anisotropy_cap = 10.0);

  const HexTerrain& terrain() const { return *terrain_; }
  PlanMode mode() const { return mode_; }

  /// Valid terrain node with a well-defined cost model.
  bool usable(HexIndex idx) const { return terrain_->contains(idx) && usable_[terrain_->layout().linear(idx)]; }

  /// Cost per meter at node idx when travelling along unit vector `heading`.
  double cost(HexIndex idx, const Vec2& heading) const;

  /// Anisotropy used to size the update stencil (clamped at the cap) and its raw value.
  double anisotropy(HexIndex idx) const { return upsilon_[terrain_->layout().linear(idx)]; }
  double raw_anisotropy(HexIndex idx) const { return raw_upsilon_[terrain_->layout().linear(idx)]; }
  double max_anisotropy() const { return max_upsilon_; }

  /// Smallest and largest directional cost over all usable nodes.
  double min_cost() const { return min_cost_; }
  double max_cost() const { return max_cost_; }

  std::size_t excluded_nodes() const { return excluded_; }
  std::size_t clamped_nodes() const { return clamped_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const HexTerrain* terrain_;
  PlanMode mode_;
  std::vector<CostEllipse> ellipses_;
  std::vector<double> scalar_;
  std::vector<double> upsilon_;
  std::vector<double> raw_upsilon_;
  std::vector<bool> usable_;
  double max_upsilon_ = 1.0;
  double min_cost_ = 0.0;
  double max_cost_ = 0.0;
  std::size_t excluded_ = 0;
  std::size_t clamped_ = 0;
  std::vector<std::string> warnings_;
};

/// Accepted node taking part in an update: position and total cost.
struct FrontPoint {
  Vec2 position;
  double T;
};

struct UpdateResult {
  double T = std::numeric_limits<double>::infinity();
  Vec2 psi = Vec2::Zero();  // unit propagation direction at x
  Regime regime = Regime::Fallback;
  double epsilon = 1.0;     // weight of the first member at the minimiser
};

/// Cost per meter at x as a function of the unit propagation direction.
using DirectionalCost = std::function<double(const Vec2&)>;

/// Minimum of C(dir) |x - p(e)| + e T' + (1 - e) T'' over e in [0, 1], with
/// p(e) = e x' + (1 - e) x''. Golden-section search plus both endpoints.
UpdateResult semi_lagrangian_update(const Vec2& x, const FrontPoint& a, const FrontPoint& b,
                                    const DirectionalCost& cost);

/// Update from a single accepted node: T' + C(dir) |x - x'|.
UpdateResult point_update(const Vec2& x, const FrontPoint& a, const DirectionalCost& cost);

/// Isotropic update on an equilateral lattice triangle of side h with cost c:
/// closed form when the characteristic falls inside the triangle and is upwind,
/// otherwise min(T', T'') + h c.
UpdateResult eulerian_update(const Vec2& x, const FrontPoint& a, const FrontPoint& b, double h, double c);

/// Explicit hex closed form (T' + T'')/2 + sqrt(3 (h c)^2 - 3 (T' - T'')^2)/2;
/// nullopt when the radicand is negative.
std::optional<double> hex_closed_form(double t1, double t2, double h, double c);

/// True iff the candidate lies strictly above the smaller neighbour value.
bool upwind_condition(double candidate, double t1, double t2);

/// Unit gradient of the linear interpolant through (x, T), (x', T'), (x'', T'');
/// nullopt when the offsets are collinear.
std::optional<Vec2> eulerian_psi(const Vec2& x, double T, const FrontPoint& a, const FrontPoint& b);

/// Combines pair and single-node updates at x. With anisotropy > 1 every
/// candidate uses the semi-Lagrangian form; otherwise pairs use the Eulerian
/// update and singles the Dijkstra-like step.
UpdateResult update_T(const Vec2& x, const std::vector<std::pair<FrontPoint, FrontPoint>>& pairs,
                      const std::vector<FrontPoint>& singles, const DirectionalCost& cost, double anisotropy,
                      double h);

/// Direction angle of a vector, atan2(y, x).
inline double heading_angle(const Vec2& v) { return std::atan2(v.y(), v.x()); }

/// One wavefront of the bi-directional solver.
class SolverSide {
 public:
  SolverSide(SideLabel label, const CostField& field);

  SideLabel label() const { return label_; }
  const CostField& field() const { return *field_; }
  HexIndex source() const { return source_; }

  /// Marks source as AcceptedFront with T = 0 and undefined direction, then
  /// propagates to its neighbours.
  void seed(HexIndex source);

  /// Pops the Considered node of least T (ties on (i, j)) and marks it
  /// AcceptedFront; nullopt when the frontier is empty.
  std::optional<HexIndex> get_next_node();

  /// Front bookkeeping and cost propagation after x was accepted.
  void update_neighbours(HexIndex x);

  /// Pairs of adjacent AcceptedFront nodes whose members both lie within
  /// h * anisotropy of x, in deterministic order.
  std::vector<std::pair<HexIndex, HexIndex>> accepted_front_within(HexIndex x, double anisotropy) const;

  /// Inserts or lowers a Considered node directly.
  void push_considered(HexIndex x, double T, double psi = std::numeric_limits<double>::quiet_NaN());

  NodeState state(HexIndex idx) const { return state_[lin(idx)]; }
  double T(HexIndex idx) const { return T_[lin(idx)]; }
  /// Stored direction angle: propagation direction away from this side's source (NaN if undefined).
  double stored_psi(HexIndex idx) const { return psi_[lin(idx)]; }
  /// Heading the vehicle follows at idx: stored for FromStart, stored + pi for FromGoal.
  double reported_psi(HexIndex idx) const;

  std::size_t expanded() const { return expanded_; }
  const std::array<std::size_t, 3>& regime_counts() const { return regimes_; }
  std::size_t monotonicity_violations() const { return violations_; }
  bool frontier_empty() const;

  const std::vector<double>& T_field() const { return T_; }
  const std::vector<double>& psi_field() const { return psi_; }
  const std::vector<NodeState>& states() const { return state_; }

 private:
  using Key = std::tuple<double, int, int>;

  std::size_t lin(HexIndex idx) const { return field_->terrain().layout().linear(idx); }
  double cost_at(HexIndex x, const Vec2& dir) const;
  UpdateResult full_update(HexIndex x) const;
  UpdateResult incremental_update(HexIndex x, HexIndex accepted) const;
  void apply(HexIndex x, const UpdateResult& r);
  void refresh_front_status(HexIndex x);

  SideLabel label_;
  const CostField* field_;
  HexIndex source_;
  std::vector<NodeState> state_;
  std::vector<double> T_;
  std::vector<double> psi_;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> frontier_;
  std::vector<std::pair<HexIndex, double>> offsets_;  // lattice offsets sorted by Euclidean length
  std::size_t expanded_ = 0;
  std::array<std::size_t, 3> regimes_{};
  std::size_t violations_ = 0;
  double last_accepted_ = 0.0;
};

/// True iff idx is Accepted on both sides.
bool check_fin_condition(const SolverSide& s0, const SolverSide& sg, HexIndex idx);

struct PlanDiagnostics {
  std::array<std::size_t, 2> expanded{};          // FromStart, FromGoal
  std::array<std::size_t, 3> regime_counts{};     // semi-Lagrangian, Eulerian, fallback
  std::size_t monotonicity_violations = 0;
  std::size_t excluded_nodes = 0;
  std::size_t clamped_nodes = 0;
  double max_anisotropy = 1.0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

struct PlanResult {
  std::shared_ptr<const CostField> field;
  std::unique_ptr<SolverSide> from_start;
  std::unique_ptr<SolverSide> from_goal;
  HexIndex start;
  HexIndex goal;
  HexIndex meeting;
  double total_cost = 0.0;
  double path_step = 0.0;
  std::vector<Vec2> path;  // uniformly resampled, start to goal
  PlanDiagnostics diagnostics;
};

/// Bi-directional ordered upwind planning between two nodes.
PlanResult plan(HexIndex start, HexIndex goal, const HexTerrain& terrain, const CamisModel& model, PlanMode mode,
                const SolverOptions& options = {});

/// Same, reusing a precomputed cost field.
PlanResult plan(HexIndex start, HexIndex goal, std::shared_ptr<const CostField> field,
                const SolverOptions& options = {});

/// Single-source run from `source`, stopping once `target` is accepted (or the
/// frontier empties when target is nullopt).
std::unique_ptr<SolverSide> solve_field(HexIndex source, const CostField& field,
                                        std::optional<HexIndex> target = std::nullopt);

/// Follows the direction fields from the meeting node toward both sources with
/// fixed steps; returns the concatenated polyline from start to goal.
std::vector<Vec2> extract_path(const SolverSide& s0, const SolverSide& sg, HexIndex meeting, double step);

/// Resamples a polyline at uniform arc-length spacing not exceeding step:
/// ceil(L / step) + 1 points including both ends.
std::vector<Vec2> resample_polyline(const std::vector<Vec2>& polyline, double step);

double polyline_length(const std::vector<Vec2>& polyline);

}  // namespace camis
