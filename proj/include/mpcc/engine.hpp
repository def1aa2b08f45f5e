#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mpcc/graph.hpp"
#include "mpcc/mpc_model.hpp"
#include "mpcc/oracle.hpp"

namespace mpcc {

// Parameters for the budget-driven connectivity engine. The engine grows each
// vertex's edge budget b(v) = beta0^(growth_exponent^level(v)) with
// beta0 = sqrt(T/n), levels up crowded vertices, and contracts followers into
// leaders until every component is a clique.
struct AlgoParams {
  double total_space = 0.0;       // T in words; callers size it as m + n*(lg n)^alpha
  double alpha = 5.0;             // space exponent, recorded for callers; the
                                  // engine itself consumes T directly
  double growth_exponent = 1.25;  // budget exponentiation rate; fixed
  double leader_coeff = 3.0;      // leader probability = leader_coeff*ln(n0)/b(v)
  double delta = 0.5;             // machine-space exponent for round charging
  double space_factor = 4.0;      // audit threshold multiplier c
  double budget_cap = 0.0;        // saturation is suppressed at or above this
                                  // budget; 0 = live vertex count at initialize
  uint64_t seed = 0;
  uint64_t max_iterations = 0;    // 0 = default 20*(lg n0 + 2)^2
  bool strict_audits = false;

  // Test hook: decides leadership for saturated vertices instead of the
  // seeded coin. Null in normal runs.
  std::function<bool(uint32_t)> leader_override;
};

// One trace row per iteration; row 0 is the state right after initialize.
struct IterationRow {
  uint64_t iteration = 0;
  uint32_t live = 0;
  uint64_t edges = 0;
  double y = 0.0;        // edges + sum over active v of max(0, b(v) - d(v))
  double b2_sum = 0.0;   // sum over live v of b(v)^2
  uint32_t max_level = 0;
  uint32_t inactive = 0;
  uint32_t saturated = 0;
  uint32_t leaders = 0;
  uint32_t contracted = 0;
  uint64_t edges_added = 0;  // new edges from the two-hop step
};

struct EngineState {
  Graph g;
  AlgoParams params;
  MpcConfig config;
  CostLedger ledger;
  std::vector<IterationRow> trace;
  uint64_t iteration = 0;

  uint32_t n0 = 0;          // live count at initialize; fixed for the run
  double beta0 = 0.0;       // sqrt(T / n0)
  double budget_cap = 0.0;  // n0; at or above it a vertex is never saturated
  uint32_t level_cap = 0;   // ceil(log_growth(log_beta0(n0))), 0 if degenerate

  std::vector<uint32_t> level;
  std::vector<uint8_t> active;
  std::vector<uint32_t> next_ptr;     // current relabeling target; v when unmoved
  std::vector<uint8_t> input_alive;   // live set at initialize
  std::vector<uint32_t> rep;          // input vertex -> live vertex holding it;
                                      // the preimages are the merge classes C(v)
  std::vector<double> budget_by_level;

  double budget_at(uint32_t lvl) const { return budget_by_level[lvl]; }
  double budget(uint32_t v) const { return budget_by_level[level[v]]; }
  uint32_t max_level_live() const;

  // Stats for the last executed subroutine, folded into the trace row.
  uint32_t last_saturated = 0;
  uint32_t last_leaders = 0;
  uint32_t last_contracted = 0;
  uint64_t last_edges_added = 0;
};

// Copies the graph in, spends one normalization pass, sets every vertex to
// level 0 / budget beta0 / its own singleton class, and records trace row 0.
// Throws InvalidParamsError when T < m or parameters are out of range.
EngineState initialize(Graph g, const AlgoParams& params);

// One simultaneous step each; see the implementation for the exact contracts.
void connect_two_hops(EngineState& s);
void relabel_inter_level(EngineState& s);
void relabel_intra_level(EngineState& s);

using EngineObserver = std::function<void(const EngineState&, uint64_t)>;

// Runs iterations (two-hop, inter-level, intra-level) until every live
// component is a clique, charging the model and auditing space after each.
// The observer, when given, runs after every iteration (and once for the
// initial state with iteration 0). Throws TerminationOverflowError past the
// iteration cap.
void run_until_cliques(EngineState& s, const EngineObserver& observer = nullptr);

// Final labeling over the vertices that were live at initialize: each input
// vertex is labeled by the minimum input id sharing its final component.
ComponentLabeling finalize_labels(const EngineState& s);

// Iteration cap and level cap helpers, exposed for tests.
uint64_t default_max_iterations(uint32_t n0);
uint32_t level_cap_for(double beta0, uint32_t n0, double growth_exponent);

}  // namespace mpcc
