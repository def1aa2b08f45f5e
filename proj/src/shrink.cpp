#include "mpcc/shrink.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <string>

#include "mpcc/errors.hpp"
#include "mpcc/rng.hpp"

namespace mpcc {

ShrinkMapping ShrinkMapping::identity(uint32_t n) {
  ShrinkMapping m;
  m.f.resize(n);
  std::iota(m.f.begin(), m.f.end(), 0u);
  m.finished.assign(n, 0);
  return m;
}

void ShrinkMapping::compose(const std::vector<uint32_t>& delta) {
  for (uint32_t& t : f) t = delta[t];
}

ShrinkRoundResult shrink_round(const Graph& g, uint64_t seed, uint64_t round_index,
                               const EdgeCoin& coin) {
  const uint32_t n = g.n;
  ShrinkRoundResult res;
  res.stats.round = round_index;
  res.stats.vertices_before = g.live_count();
  res.stats.edges_before = g.m;

  // Hook to the minimum-id neighbor; adjacency is sorted, so it is the head.
  std::vector<uint32_t> out(n, kNoVertex);
  for (uint32_t v = 0; v < n; ++v)
    if (g.alive[v] && !g.adj[v].empty()) out[v] = g.adj[v][0];

  // A 2-cycle keeps only the arc leaving the smaller endpoint.
  for (uint32_t v = 0; v < n; ++v) {
    uint32_t u = out[v];
    if (u != kNoVertex && u > v && out[u] == v) out[u] = kNoVertex;
  }

  // Vertices collecting 2+ arcs drop their own. Indegrees only fall during
  // the cascade, so a pass over the current qualifying set reaches the
  // fixpoint; the loop re-checks to keep that literal.
  std::vector<uint32_t> indeg(n, 0);
  for (uint32_t v = 0; v < n; ++v)
    if (out[v] != kNoVertex) ++indeg[out[v]];
  for (bool changed = true; changed;) {
    changed = false;
    for (uint32_t v = 0; v < n; ++v) {
      if (indeg[v] >= 2 && out[v] != kNoVertex) {
        --indeg[out[v]];
        out[v] = kNoVertex;
        changed = true;
      }
    }
  }

  // Batch merge: every vertex still holding 2+ arcs absorbs all its sources;
  // arcs into the absorbed are discarded with them.
  std::vector<uint32_t> delta(n);
  std::iota(delta.begin(), delta.end(), 0u);
  std::vector<uint8_t> absorbed(n, 0);
  for (uint32_t v = 0; v < n; ++v) {
    uint32_t t = out[v];
    if (t != kNoVertex && indeg[t] >= 2) {
      delta[v] = t;
      absorbed[v] = 1;
    }
  }

  // Surviving arcs thinned with the 2/3 coin, then isolated arcs merge their
  // source into their target.
  std::vector<uint32_t> occ(n, 0);
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  for (uint32_t s = 0; s < n; ++s) {
    uint32_t t = out[s];
    if (t == kNoVertex || absorbed[s] || absorbed[t]) continue;
    bool drop;
    if (coin) {
      drop = coin(s, t);
    } else {
      uint64_t key = (static_cast<uint64_t>(s) << 32) | t;
      drop = counter_u01(seed, RngStream::kShrinkEdge, round_index, key) < (2.0 / 3.0);
    }
    if (drop) continue;
    arcs.emplace_back(s, t);
    ++occ[s];
    ++occ[t];
  }
  for (auto [s, t] : arcs) {
    if (occ[s] == 1 && occ[t] == 1) delta[s] = t;
  }

  uint32_t merges = 0;
  for (uint32_t v = 0; v < n; ++v)
    if (delta[v] != v) ++merges;

  res.g = g;
  if (merges) {
    std::vector<uint32_t> map(n, kNoVertex);
    for (uint32_t v = 0; v < n; ++v)
      if (delta[v] != v) map[v] = delta[v];
    rewrite_edges(res.g, map);
    for (uint32_t v = 0; v < n; ++v)
      if (delta[v] != v) res.g.alive[v] = 0;
  }
  res.delta = std::move(delta);
  res.stats.vertices_after = res.g.live_count();
  res.stats.edges_after = res.g.m;
  res.stats.merges = merges;
  return res;
}

ShrinkPhaseResult shrink_phase(Graph g, uint64_t target_vertices, uint64_t seed,
                               uint64_t max_rounds, const MpcConfig& config) {
  if (target_vertices < 1) throw InvalidParamsError("shrink target must be at least 1");
  ShrinkPhaseResult res;
  res.mapping = ShrinkMapping::identity(g.n);

  uint32_t stall = 0;
  for (;;) {
    uint32_t live = g.live_count();
    if (live <= target_vertices) break;
    // Single-vertex components are done; pull them out so the target is
    // about vertices still being worked on.
    bool removed = false;
    for (uint32_t v = 0; v < g.n; ++v) {
      if (g.alive[v] && g.adj[v].empty()) {
        g.alive[v] = 0;
        res.mapping.finished[v] = 1;
        --live;
        removed = true;
      }
    }
    if (removed && live <= target_vertices) break;
    if (res.rounds_used >= max_rounds)
      throw NoProgressError("shrink phase hit its round cap at " +
                            std::to_string(live) + " live vertices (target " +
                            std::to_string(target_vertices) + ")");

    ShrinkRoundResult r = shrink_round(g, seed, res.rounds_used, nullptr);
    charge_primitive(res.ledger, config, Primitive::kSort, 2 * g.m, res.rounds_used);
    charge_primitive(res.ledger, config, Primitive::kFilter, 2 * g.m, res.rounds_used);
    charge_primitive(res.ledger, config, Primitive::kDedup, 2 * r.g.m, res.rounds_used);
    g = std::move(r.g);
    res.mapping.compose(r.delta);
    res.trace.push_back(r.stats);
    res.rounds_used += 1;

    if (r.stats.vertices_after == r.stats.vertices_before) {
      if (++stall >= 100)
        throw NoProgressError("100 consecutive shrink rounds left the vertex count at " +
                              std::to_string(r.stats.vertices_after));
    } else {
      stall = 0;
    }
  }
  res.g = std::move(g);
  return res;
}

void save_mapping(const ShrinkMapping& map, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  for (uint32_t x = 0; x < map.f.size(); ++x)
    std::fprintf(f, "%u %u\n", x, map.f[x]);
  std::fclose(f);
}

}  // namespace mpcc
