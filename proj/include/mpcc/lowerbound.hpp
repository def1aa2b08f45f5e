#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mpcc/graph.hpp"
#include "mpcc/mpc_model.hpp"
#include "mpcc/oracle.hpp"
#include "mpcc/shrink.hpp"

namespace mpcc {

struct ReductionIteration {
  uint64_t index = 0;
  uint64_t edges_before = 0;      // current graph at iteration start
  uint64_t edges_kept = 0;        // sampled graph after deletions
  uint64_t edges_after = 0;       // next graph: the deleted set, contracted
  uint32_t sample_components = 0; // post-contraction vertex count
  uint32_t max_sample_diameter = 0;
};

struct ReductionStats {
  uint32_t n0 = 0;
  uint64_t m0 = 0;
  uint32_t d_prime = 0;
  uint64_t seed = 0;
  uint64_t machine_words = 0;  // stopping threshold on the edge count
  uint64_t outer_iterations = 0;
  uint32_t final_components = 0;
  std::vector<ReductionIteration> iterations;
};

using Solver = std::function<ComponentLabeling(const Graph&)>;

// Iterated sampling reduction on a disjoint union of cycles: delete each edge
// with probability min(1, 2 ln(n_cur)/d_prime), label the sampled graph with
// the given solver, contract its components, and re-draw the deleted edges
// between the contracted endpoints, so exactly the deleted set survives. The
// loop stops as soon as the edge count fits one machine (config's word count)
// and the remainder is solved directly. Component counts are preserved by
// every step regardless of randomness.
//
// Throws InvalidInputError unless every input vertex has degree exactly 2,
// and NoProgressError when 50 consecutive iterations change nothing (only
// reachable when the probability clamps to 1).
ReductionStats cycle_reduction(const Graph& g, uint32_t d_prime, uint64_t seed,
                               const Solver& solver, const MpcConfig& config,
                               const EdgeCoin& coin = nullptr);

}  // namespace mpcc
