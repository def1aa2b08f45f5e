#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpcc/driver.hpp"
#include "mpcc/errors.hpp"
#include "mpcc/generate.hpp"
#include "mpcc/lowerbound.hpp"
#include "mpcc/rng.hpp"
#include "mpcc/shrink.hpp"

namespace {

using namespace mpcc;

void write_lowerbound_csv(const std::vector<ReductionStats>& runs,
                          const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  std::fprintf(f,
               "seed,outer_iterations,final_components,iteration,edges_before,"
               "edges_kept,edges_after,sample_components,max_sample_diameter\n");
  for (const ReductionStats& s : runs) {
    for (const ReductionIteration& it : s.iterations) {
      std::fprintf(f, "%llu,%llu,%u,%llu,%llu,%llu,%llu,%u,%u\n",
                   static_cast<unsigned long long>(s.seed),
                   static_cast<unsigned long long>(s.outer_iterations),
                   s.final_components,
                   static_cast<unsigned long long>(it.index),
                   static_cast<unsigned long long>(it.edges_before),
                   static_cast<unsigned long long>(it.edges_kept),
                   static_cast<unsigned long long>(it.edges_after),
                   it.sample_components, it.max_sample_diameter);
    }
    if (s.iterations.empty()) {
      std::fprintf(f, "%llu,0,%u,,,,,,\n",
                   static_cast<unsigned long long>(s.seed), s.final_components);
    }
  }
  std::fclose(f);
}

void write_report(const RunReport& rep, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  std::string j = report_to_json(rep);
  std::fwrite(j.data(), 1, j.size(), f);
  std::fclose(f);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mpcc;
  CLI::App app{"budget-driven graph connectivity workbench"};
  app.require_subcommand(1);
  const char* strict_env = std::getenv("MPCC_STRICT_AUDITS");
  const bool strict = strict_env && std::string(strict_env) == "1";

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated edge list");
  std::string g_family = "path", g_out;
  uint64_t g_n = 0, g_m = 0, g_seed = 0;
  uint32_t g_rows = 0, g_cols = 0, g_parts = 4;
  gen->add_option("--family", g_family, "graph family")->required();
  gen->add_option("--n", g_n, "vertex count")->required();
  gen->add_option("--m", g_m, "edge count (gnm)");
  gen->add_option("--rows", g_rows, "grid rows");
  gen->add_option("--cols", g_cols, "grid cols");
  gen->add_option("--parts", g_parts, "disjoint union parts");
  gen->add_option("--seed", g_seed, "seed");
  gen->add_option("--out", g_out, "output edge list")->required();

  // cc run / cc bench
  auto* cc = app.add_subcommand("cc", "connected components");
  cc->require_subcommand(1);
  auto* run = cc->add_subcommand("run", "label one graph end to end");
  std::string r_in, r_trace, r_report, r_labels;
  double r_delta = 0.5, r_alpha = 5.0;
  uint64_t r_seed = 0;
  bool r_no_verify = false;
  run->add_option("--in", r_in, "input edge list")->required();
  run->add_option("--delta", r_delta, "machine space exponent");
  run->add_option("--alpha", r_alpha, "space polylog exponent");
  run->add_option("--seed", r_seed, "seed");
  run->add_flag("--no-verify", r_no_verify, "skip the oracle check");
  run->add_option("--trace", r_trace, "per-iteration CSV");
  run->add_option("--report", r_report, "run report JSON");
  run->add_option("--labels", r_labels, "final labels file");

  auto* bench = cc->add_subcommand("bench", "sweep a family, doubling n");
  std::string b_family = "path", b_out;
  uint32_t b_nmin = 0, b_nmax = 0, b_seeds = 1;
  double b_delta = 0.5, b_alpha = 5.0;
  bench->add_option("--family", b_family, "graph family")->required();
  bench->add_option("--nmin", b_nmin, "smallest n")->required();
  bench->add_option("--nmax", b_nmax, "largest n")->required();
  bench->add_option("--seeds", b_seeds, "seeds per instance");
  bench->add_option("--delta", b_delta, "machine space exponent");
  bench->add_option("--alpha", b_alpha, "space polylog exponent");
  bench->add_option("--out", b_out, "output CSV")->required();

  // shrink
  auto* shr = app.add_subcommand("shrink", "contract a graph to a vertex target");
  std::string s_in, s_out, s_map;
  uint64_t s_target = 0, s_seed = 0, s_max_rounds = 4000;
  shr->add_option("--in", s_in, "input edge list")->required();
  shr->add_option("--target", s_target, "vertex target")->required();
  shr->add_option("--seed", s_seed, "seed");
  shr->add_option("--max-rounds", s_max_rounds, "round cap");
  shr->add_option("--out", s_out, "contracted edge list")->required();
  shr->add_option("--map", s_map, "mapping file");

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "cycle reduction experiment");
  uint32_t l_n = 0, l_dprime = 0, l_seeds = 1;
  double l_delta = 0.5;
  std::string l_out, l_solver = "driver";
  lb->add_option("--n", l_n, "cycle length")->required();
  lb->add_option("--dprime", l_dprime, "diameter budget")->required();
  lb->add_option("--seeds", l_seeds, "number of seeded runs");
  lb->add_option("--delta", l_delta, "machine space exponent");
  lb->add_option("--solver", l_solver, "driver or unionfind");
  lb->add_option("--out", l_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (gen->parsed()) {
      GenSpec spec;
      spec.family = family_from_string(g_family);
      spec.n = static_cast<uint32_t>(g_n);
      spec.m = g_m;
      spec.rows = g_rows;
      spec.cols = g_cols;
      spec.parts = g_parts;
      spec.seed = g_seed;
      Graph g = generate(spec);
      save_edge_list(g, g_out);
      std::printf("wrote %s: n=%u m=%llu\n", g_out.c_str(), g.n,
                  static_cast<unsigned long long>(g.m));
      return 0;
    }

    if (run->parsed()) {
      Graph g = load_edge_list(r_in);
      DriverOptions opt;
      opt.delta = r_delta;
      opt.alpha = r_alpha;
      opt.seed = r_seed;
      opt.verify = !r_no_verify && g.live_count() <= 1000000u;
      opt.strict_audits = strict;
      opt.compute_diameters = g.live_count() <= 4096;
      auto [labels, rep] = find_connected_components(g, opt);
      if (!r_report.empty()) write_report(rep, r_report);
      if (!r_trace.empty()) write_run_trace_csv(rep, r_trace);
      if (!r_labels.empty()) {
        std::vector<std::pair<uint32_t, uint32_t>> rows;
        for (uint32_t v = 0; v < g.n; ++v)
          if (labels.label[v] != ComponentLabeling::kNoLabel)
            rows.emplace_back(v, labels.label[v]);
        save_labels(rows, r_labels);
      }
      std::printf(
          "n=%u m=%llu components=%u direct=%d shrink_rounds=%llu "
          "iterations=%llu rounds=%llu max_level=%u wall_ms=%.1f\n",
          rep.n, static_cast<unsigned long long>(rep.m), rep.components,
          rep.direct ? 1 : 0, static_cast<unsigned long long>(rep.shrink_rounds),
          static_cast<unsigned long long>(rep.main_iterations),
          static_cast<unsigned long long>(rep.ledger.rounds), rep.max_level,
          rep.wall_ms);
      if (rep.verified && !rep.verify_ok) {
        std::fprintf(stderr, "verification mismatch against the oracle\n");
        return 2;
      }
      return 0;
    }

    if (bench->parsed()) {
      auto rows = bench_sweep(family_from_string(b_family), b_nmin, b_nmax,
                              b_seeds, b_delta, b_alpha);
      write_bench_csv(rows, b_out);
      std::printf("wrote %s: %zu rows\n", b_out.c_str(), rows.size());
      return 0;
    }

    if (shr->parsed()) {
      Graph g = load_edge_list(s_in);
      MpcConfig config;
      config.n0 = std::max<uint64_t>(1, g.live_count());
      config.total_space = g.m + g.live_count();
      config.space_factor = 8.0;
      config.strict = strict;
      ShrinkPhaseResult res =
          shrink_phase(std::move(g), s_target, s_seed, s_max_rounds, config);
      save_edge_list(res.g, s_out);
      if (!s_map.empty()) save_mapping(res.mapping, s_map);
      std::printf("rounds=%llu live=%u edges=%llu\n",
                  static_cast<unsigned long long>(res.rounds_used),
                  res.g.live_count(),
                  static_cast<unsigned long long>(res.g.m));
      return 0;
    }

    if (lb->parsed()) {
      GenSpec spec;
      spec.family = Family::kCycle;
      spec.n = l_n;
      Graph cyc = generate(spec);
      MpcConfig config;
      config.delta = l_delta;
      config.n0 = std::max<uint64_t>(1, cyc.live_count());
      config.total_space = cyc.m + cyc.live_count();
      config.space_factor = 8.0;
      config.strict = strict;
      std::vector<ReductionStats> runs;
      for (uint32_t s = 0; s < l_seeds; ++s) {
        Solver solver;
        if (l_solver == "unionfind") {
          solver = [](const Graph& gg) { return oracle_components(gg); };
        } else if (l_solver == "driver") {
          DriverOptions sopt;
          sopt.delta = l_delta;
          sopt.seed = s;
          sopt.verify = false;
          solver = [sopt](const Graph& gg) {
            return find_connected_components(gg, sopt).first;
          };
        } else {
          throw InvalidParamsError("unknown solver: " + l_solver);
        }
        runs.push_back(cycle_reduction(cyc, l_dprime, s, solver, config));
        const ReductionStats& st = runs.back();
        std::printf("seed=%u outer=%llu components=%u\n", s,
                    static_cast<unsigned long long>(st.outer_iterations),
                    st.final_components);
      }
      write_lowerbound_csv(runs, l_out);
      return 0;
    }
  } catch (const TerminationOverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NoProgressError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const AuditError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
