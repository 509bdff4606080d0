#pragma once

#include <cstddef>
#include <vector>

#include "camis/cost_model.hpp"
#include "camis/solver.hpp"

namespace camis {

/// Weighted directed graph over usable hex nodes with ring-1 and ring-2 edges.
struct DiscreteGraph {
  struct Edge {
    std::size_t to;
    double weight;
  };
  std::vector<HexIndex> nodes;
  std::vector<std::vector<Edge>> adjacency;

  /// Node id of idx, or nodes.size() when absent.
  std::size_t id(HexIndex idx) const;
};

/// Edge weight = segment length x mean cost at the segment heading over both
/// endpoints. Costs come from the field, so the mode (anisotropic or
/// isotropic) follows the field.
DiscreteGraph build_graph(const CostField& field);

/// Same graph with node ids permuted: new id of old node k is permutation[k].
DiscreteGraph relabel(const DiscreteGraph& graph, const std::vector<std::size_t>& permutation);

struct DiscretePath {
  double cost = 0.0;
  std::vector<std::size_t> nodes;
};

/// Dijkstra between two node ids. Throws UnreachableError when disconnected.
DiscretePath shortest_path(const DiscreteGraph& graph, std::size_t start, std::size_t goal);

/// Isotropic hex Eikonal solve from one source (label-setting with the
/// equilateral-triangle update), for nodes of a field in isotropic mode.
/// Returns T per linear node index (infinity where unreached).
std::vector<double> isotropic_eikonal(const CostField& field, HexIndex source);

/// Extreme costs of an ellipse by uniform sampling of `samples` headings.
CostRange sampled_cost_range(const CostEllipse& e, int samples = 36000);

}  // namespace camis
