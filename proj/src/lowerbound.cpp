#include "mpcc/lowerbound.hpp"

#include <cmath>
#include <utility>

#include "mpcc/errors.hpp"
#include "mpcc/rng.hpp"

namespace mpcc {

namespace {

// Max component diameter of a degree-at-most-2 graph: components are paths
// (k-1) or cycles (floor(k/2)), so one walk per component suffices.
uint32_t max_path_cycle_diameter(const Graph& g) {
  uint32_t best = 0;
  std::vector<uint8_t> seen(g.n, 0);
  std::vector<uint32_t> stack;
  for (uint32_t v = 0; v < g.n; ++v) {
    if (!g.alive[v] || seen[v]) continue;
    uint32_t k = 0;
    bool all_deg2 = true;
    stack.assign(1, v);
    seen[v] = 1;
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      ++k;
      if (g.adj[x].size() != 2) all_deg2 = false;
      for (uint32_t u : g.adj[x]) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    uint32_t d = all_deg2 ? k / 2 : k - 1;
    best = std::max(best, d);
  }
  return best;
}

}  // namespace

ReductionStats cycle_reduction(const Graph& g, uint32_t d_prime, uint64_t seed,
                               const Solver& solver, const MpcConfig& config,
                               const EdgeCoin& coin) {
  if (d_prime < 2) throw InvalidParamsError("d_prime must be at least 2");
  if (!solver) throw InvalidParamsError("cycle_reduction needs a solver");
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v] && g.adj[v].size() != 2)
      throw InvalidInputError("input must be a disjoint union of cycles");

  ReductionStats stats;
  stats.n0 = g.live_count();
  stats.m0 = g.m;
  stats.d_prime = d_prime;
  stats.seed = seed;
  stats.machine_words = config.words_per_machine();

  Graph cur = g;
  uint32_t stall = 0;
  while (cur.m > stats.machine_words) {
    if (stats.outer_iterations >= 10000)
      throw NoProgressError("reduction exceeded 10000 outer iterations");
    uint64_t it = stats.outer_iterations;
    uint32_t n_cur = cur.live_count();
    double p = std::min(1.0, 2.0 * std::log(static_cast<double>(n_cur)) /
                                 static_cast<double>(d_prime));

    std::vector<std::pair<uint32_t, uint32_t>> deleted;
    Graph samp(cur.n);
    samp.alive = cur.alive;
    for (uint32_t v = 0; v < cur.n; ++v) {
      if (!cur.alive[v]) continue;
      for (uint32_t u : cur.adj[v]) {
        if (u <= v) continue;
        uint64_t key = (static_cast<uint64_t>(v) << 32) | u;
        bool drop = coin ? coin(v, u)
                         : counter_u01(seed, RngStream::kReductionEdge, it, key) < p;
        if (drop)
          deleted.emplace_back(v, u);
        else
          samp.add_edge_raw(v, u);
      }
    }
    samp.normalize();

    ComponentLabeling labels = solver(samp);

    // One representative per sampled component stays; the deleted edges are
    // re-drawn between representatives, so exactly the deleted set survives.
    Graph next(cur.n);
    for (uint32_t v = 0; v < cur.n; ++v)
      next.alive[v] = cur.alive[v] && labels.label[v] == v;
    for (auto [a, b] : deleted) {
      uint32_t ma = labels.label[a];
      uint32_t mb = labels.label[b];
      if (ma != mb) next.add_edge_raw(ma, mb);
    }
    next.normalize();

    ReductionIteration row;
    row.index = it;
    row.edges_before = cur.m;
    row.edges_kept = samp.m;
    row.edges_after = next.m;
    row.sample_components = labels.component_count;
    row.max_sample_diameter = max_path_cycle_diameter(samp);
    stats.iterations.push_back(row);

    if (next.m == cur.m && next.live_count() == n_cur) {
      if (++stall >= 50)
        throw NoProgressError(
            "50 reduction iterations without progress; the deletion "
            "probability is saturated for this d_prime");
    } else {
      stall = 0;
    }
    cur = std::move(next);
    stats.outer_iterations += 1;
  }

  stats.final_components = oracle_components(cur).component_count;
  return stats;
}

}  // namespace mpcc
