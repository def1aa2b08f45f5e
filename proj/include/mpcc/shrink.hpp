#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpcc/graph.hpp"
#include "mpcc/mpc_model.hpp"

namespace mpcc {

// Total map from original vertex ids into the current graph, composed across
// rounds. A target flagged finished is a fully contracted component that was
// removed from the working graph; everything mapping to it shares one label.
// Unfinished targets are always live in the current graph.
struct ShrinkMapping {
  std::vector<uint32_t> f;
  std::vector<uint8_t> finished;

  static ShrinkMapping identity(uint32_t n);
  // f[x] <- delta[f[x]]; delta is identity where nothing merged.
  void compose(const std::vector<uint32_t>& delta);
};

struct ShrinkRoundStats {
  uint64_t round = 0;
  uint32_t vertices_before = 0;
  uint32_t vertices_after = 0;
  uint64_t edges_before = 0;
  uint64_t edges_after = 0;
  uint32_t merges = 0;
};

// Test hook for the arc-sampling coin: return true to delete arc (src, dst).
// Null uses the seeded 2/3 coin.
using EdgeCoin = std::function<bool(uint32_t, uint32_t)>;

struct ShrinkRoundResult {
  Graph g;
  std::vector<uint32_t> delta;  // absorbed id -> absorber id, identity elsewhere
  ShrinkRoundStats stats;
};

// One contraction round: hook every vertex to its minimum-id neighbor, break
// 2-cycles toward the smaller source, cascade-prune outgoing arcs of vertices
// with 2+ incoming, batch-merge into such vertices, thin surviving arcs with
// the 2/3 coin, and merge the arcs left isolated. Merges happen only across
// edges of the round's input, so components are preserved exactly and
// |E'| <= |E| on every seed.
ShrinkRoundResult shrink_round(const Graph& g, uint64_t seed, uint64_t round_index,
                               const EdgeCoin& coin = nullptr);

struct ShrinkPhaseResult {
  Graph g;
  ShrinkMapping mapping;
  uint64_t rounds_used = 0;
  std::vector<ShrinkRoundStats> trace;
  CostLedger ledger;
};

// Rounds until the live count is at or below target_vertices. Vertices whose
// component contracts to a single point leave the working graph with their
// map target flagged finished, so disconnected inputs reach small targets.
// Charges a 3-primitive bundle per round. Throws NoProgressError after 100
// rounds without a vertex-count change or when max_rounds runs out first.
ShrinkPhaseResult shrink_phase(Graph g, uint64_t target_vertices, uint64_t seed,
                               uint64_t max_rounds, const MpcConfig& config);

// "orig current" per line, one for every original vertex id.
void save_mapping(const ShrinkMapping& map, const std::string& path);

}  // namespace mpcc
