#pragma once

#include <cstdint>
#include <vector>

#include "mpcc/graph.hpp"

namespace mpcc {

// Component labeling over live vertices. label[v] is the minimum live vertex
// id in v's component, so every representative is a fixed point:
// label[label[v]] == label[v]. Entries for dead vertices are kNoLabel.
struct ComponentLabeling {
  static constexpr uint32_t kNoLabel = 0xffffffffu;
  std::vector<uint32_t> label;
  uint32_t component_count = 0;

  bool operator==(const ComponentLabeling& o) const {
    return component_count == o.component_count && label == o.label;
  }
};

// Reference answer via union-find (path halving + union by size).
ComponentLabeling oracle_components(const Graph& g);

// Second, structurally independent answer via BFS flood fill. Kept separate
// so the two can cross-check each other in tests.
ComponentLabeling bfs_components(const Graph& g);

// True iff every component of the live graph is a clique (singletons count).
bool is_clique_partition(const Graph& g);

// Exact diameter of each component via all-pairs BFS, one entry per
// component ordered by representative id. Intended for test-sized graphs;
// cost is O(n * (n + m)).
std::vector<uint32_t> exact_component_diameters(const Graph& g);
uint32_t exact_diameter(const Graph& g);  // max over components, 0 if empty

// Double-sweep BFS lower bound on the diameter (exact on trees and paths,
// an estimate elsewhere). Cheap: two BFS per component.
uint32_t double_sweep_diameter_estimate(const Graph& g);

// BFS distances from src over live vertices; 0xffffffff where unreachable.
std::vector<uint32_t> bfs_distances(const Graph& g, uint32_t src);

}  // namespace mpcc
