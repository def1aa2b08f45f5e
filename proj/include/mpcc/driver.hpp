#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpcc/engine.hpp"
#include "mpcc/generate.hpp"
#include "mpcc/graph.hpp"
#include "mpcc/oracle.hpp"
#include "mpcc/shrink.hpp"

namespace mpcc {

struct DriverOptions {
  double delta = 0.5;
  double alpha = 5.0;   // exponent in the m >= n*(lg n)^alpha branch and in T
  uint64_t seed = 0;
  bool verify = true;
  bool strict_audits = false;
  bool compute_diameters = false;
  uint64_t shrink_max_rounds = 4000;
};

struct RunReport {
  uint32_t n = 0;        // live input vertices
  uint64_t m = 0;
  uint32_t isolated = 0; // labeled up front, before any phase
  bool direct = false;   // true when the edge count paid for skipping shrink
  double total_space = 0.0;  // engine T; 0 when the engine never ran
  uint64_t shrink_rounds = 0;
  uint32_t shrunk_vertices = 0;  // engine input size on the shrink path
  uint64_t shrunk_edges = 0;
  uint64_t main_iterations = 0;
  uint32_t max_level = 0;
  uint32_t level_cap = 0;
  uint32_t components = 0;
  bool verified = false;
  bool verify_ok = true;
  double wall_ms = 0.0;  // reported on stdout only, never serialized
  DriverOptions options;
  CostLedger ledger;  // shrink and engine merged, plus the composed-space audit
  std::vector<uint32_t> diameters;  // per component, when computed
  std::vector<IterationRow> engine_trace;
  std::vector<ShrinkRoundStats> shrink_trace;
};

// End-to-end labeling: isolated vertices labeled immediately; dense inputs
// (m >= n*(lg n)^alpha) run the engine directly with T = 2m; sparse inputs
// shrink to n/(lg n)^alpha vertices first and run the engine with
// T = m' + |V'|*(lg |V'|)^alpha, which keeps the whole pipeline at O(m + n)
// words. Labels are pulled back through the shrink mapping and canonicalized
// to the minimum original id per component.
std::pair<ComponentLabeling, RunReport> find_connected_components(
    const Graph& g, const DriverOptions& opt);

std::string report_to_json(const RunReport& r);

struct BenchRow {
  std::string family;
  uint32_t n = 0;
  uint64_t m = 0;
  uint32_t diameter = 0;
  uint64_t seed = 0;
  uint64_t iterations = 0;
  uint64_t rounds_charged = 0;
  double peak_y_over_t = 0.0;
  double peak_b2_over_t = 0.0;
  uint32_t max_level = 0;
};

// Doubling grid nmin..nmax, engine-direct with T = m + n*(lg n)^alpha per
// instance, one row per (n, seed). Diameters are closed-form per family where
// available and a double-sweep estimate otherwise.
std::vector<BenchRow> bench_sweep(Family family, uint32_t nmin, uint32_t nmax,
                                  uint32_t seeds, double delta, double alpha);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
void write_run_trace_csv(const RunReport& r, const std::string& path);

}  // namespace mpcc
