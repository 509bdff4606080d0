#include "camis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "camis/errors.hpp"

namespace camis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<HexIndex, 18> kRingOffsets{{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
    {2, 0}, {0, 2}, {-2, 2}, {-2, 0}, {0, -2}, {2, -2},
    {1, 1}, {-1, 2}, {-2, 1}, {-1, -1}, {1, -2}, {2, -1},
}};

}  // namespace

std::size_t DiscreteGraph::id(HexIndex idx) const {
  const auto it = std::find(nodes.begin(), nodes.end(), idx);
  return static_cast<std::size_t>(it - nodes.begin());
}

DiscreteGraph build_graph(const CostField& field) {
  const HexLayout& layout = field.terrain().layout();
  DiscreteGraph g;
  std::map<HexIndex, std::size_t> ids;
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const HexIndex idx = layout.index(l);
    if (!field.usable(idx)) continue;
    ids.emplace(idx, g.nodes.size());
    g.nodes.push_back(idx);
  }
  g.adjacency.resize(g.nodes.size());
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    const HexIndex u = g.nodes[a];
    for (const HexIndex& off : kRingOffsets) {
      const HexIndex v{u.i + off.i, u.j + off.j};
      const auto it = ids.find(v);
      if (it == ids.end()) continue;
      const Vec2 d = layout.position(v) - layout.position(u);
      const double len = d.norm();
      const Vec2 dir = d / len;
      const double w = len * 0.5 * (field.cost(u, dir) + field.cost(v, dir));
      g.adjacency[a].push_back({it->second, w});
    }
  }
  return g;
}

DiscreteGraph relabel(const DiscreteGraph& graph, const std::vector<std::size_t>& permutation) {
  const std::size_t n = graph.nodes.size();
  if (permutation.size() != n) throw ContractViolation("permutation size mismatch");
  DiscreteGraph out;
  out.nodes.resize(n);
  out.adjacency.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.nodes[permutation[k]] = graph.nodes[k];
    for (const auto& e : graph.adjacency[k]) out.adjacency[permutation[k]].push_back({permutation[e.to], e.weight});
  }
  return out;
}

DiscretePath shortest_path(const DiscreteGraph& graph, std::size_t start, std::size_t goal) {
  const std::size_t n = graph.nodes.size();
  if (start >= n || goal >= n) throw ContractViolation("node id out of range");
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> prev(n, n);
  std::set<std::pair<double, std::size_t>> open;
  dist[start] = 0.0;
  open.emplace(0.0, start);
  while (!open.empty()) {
    const auto [d, u] = *open.begin();
    open.erase(open.begin());
    if (u == goal) break;
    for (const auto& e : graph.adjacency[u]) {
      const double nd = d + e.weight;
      if (nd < dist[e.to]) {
        open.erase({dist[e.to], e.to});
        dist[e.to] = nd;
        prev[e.to] = u;
        open.emplace(nd, e.to);
      }
    }
  }
  if (dist[goal] == kInf) throw UnreachableError("goal not reachable in the discrete graph");
  DiscretePath path;
  path.cost = dist[goal];
  for (std::size_t v = goal; v != n; v = prev[v]) path.nodes.push_back(v);
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

std::vector<double> isotropic_eikonal(const CostField& field, HexIndex source) {
  const HexLayout& layout = field.terrain().layout();
  const double h = layout.resolution();
  const std::size_t n = layout.size();
  std::vector<double> T(n, kInf);
  std::vector<char> done(n, 0);
  std::set<std::tuple<double, int, int>> open;
  T[layout.linear(source)] = 0.0;
  open.emplace(0.0, source.i, source.j);

  auto estimate = [&](HexIndex x) {
    const double c = field.cost(x, Vec2::UnitX());
    const auto ring = neighborhood(x);
    double best = kInf;
    for (std::size_t k = 0; k < 6; ++k) {
      const HexIndex a = ring[k];
      if (!layout.contains(a) || !done[layout.linear(a)]) continue;
      const double ta = T[layout.linear(a)];
      best = std::min(best, ta + h * c);
      // Consecutive ring members are adjacent to each other.
      const HexIndex b = ring[(k + 1) % 6];
      if (!layout.contains(b) || !done[layout.linear(b)]) continue;
      const double tb = T[layout.linear(b)];
      const double diff = ta - tb;
      if (std::abs(diff) <= 0.5 * h * c) {
        const double t = 0.5 * (ta + tb) + 0.5 * std::sqrt(3.0 * h * h * c * c - 3.0 * diff * diff);
        if (t > std::min(ta, tb)) best = std::min(best, t);
      }
    }
    return best;
  };

  while (!open.empty()) {
    const auto [t, i, j] = *open.begin();
    open.erase(open.begin());
    const HexIndex x{i, j};
    done[layout.linear(x)] = 1;
    for (const HexIndex& y : neighborhood(x)) {
      if (!field.usable(y) || done[layout.linear(y)]) continue;
      const std::size_t ly = layout.linear(y);
      const double ty = estimate(y);
      if (ty < T[ly]) {
        open.erase({T[ly], y.i, y.j});
        T[ly] = ty;
        open.emplace(ty, y.i, y.j);
      }
    }
  }
  return T;
}

CostRange sampled_cost_range(const CostEllipse& e, int samples) {
  CostRange r{kInf, 0.0};
  for (int k = 0; k < samples; ++k) {
    const double c = e.cost(-kPi + 2.0 * kPi * k / samples);
    r.min = std::min(r.min, c);
    r.max = std::max(r.max, c);
  }
  return r;
}

}  // namespace camis
