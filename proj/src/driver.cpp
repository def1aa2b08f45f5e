#include "mpcc/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "mpcc/errors.hpp"

namespace mpcc {

namespace {

double lg_pow(uint32_t n, double alpha) {
  if (n < 2) return 0.0;
  return std::pow(std::log2(static_cast<double>(n)), alpha);
}

uint32_t analytic_diameter(Family family, const Graph& g) {
  uint32_t n = g.live_count();
  if (n <= 1) return 0;
  switch (family) {
    case Family::kPath:
      return n - 1;
    case Family::kCycle:
      return n / 2;
    case Family::kStar:
      return n > 2 ? 2 : n - 1;
    case Family::kTwoCycles:
      return (n / 2) / 2;
    default:
      // Exact on trees and tight on grids; an estimate elsewhere.
      return double_sweep_diameter_estimate(g);
  }
}

}  // namespace

std::pair<ComponentLabeling, RunReport> find_connected_components(
    const Graph& g, const DriverOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Graph work = g;
  work.normalize();

  RunReport rep;
  rep.options = opt;
  rep.n = work.live_count();
  rep.m = work.m;
  if (opt.compute_diameters) rep.diameters = exact_component_diameters(work);

  const uint32_t n = work.n;
  ComponentLabeling out;
  out.label.assign(n, ComponentLabeling::kNoLabel);

  // key[x]: an id shared by exactly the vertices of x's component.
  std::vector<uint32_t> key(n, kNoVertex);
  std::vector<uint8_t> in_live(n, 0);
  for (uint32_t v = 0; v < n; ++v) in_live[v] = work.alive[v];

  for (uint32_t v = 0; v < n; ++v) {
    if (work.alive[v] && work.adj[v].empty()) {
      key[v] = v;
      work.alive[v] = 0;
      ++rep.isolated;
    }
  }

  uint32_t n_work = rep.n - rep.isolated;
  uint64_t m_work = work.m;
  rep.direct = static_cast<double>(m_work) >=
               static_cast<double>(n_work) * lg_pow(n_work, opt.alpha);

  ShrinkMapping mapping;
  Graph engine_input(0);
  bool ran_shrink = false;

  if (rep.direct) {
    engine_input = std::move(work);
  } else {
    ran_shrink = true;
    uint64_t target = std::max<uint64_t>(
        1, static_cast<uint64_t>(std::floor(n_work / lg_pow(n_work, opt.alpha))));
    MpcConfig phase_config;
    phase_config.delta = opt.delta;
    phase_config.n0 = std::max<uint64_t>(1, n_work);
    phase_config.total_space = m_work + n_work;
    phase_config.space_factor = 8.0;
    phase_config.strict = opt.strict_audits;
    ShrinkPhaseResult phase = shrink_phase(std::move(work), target, opt.seed,
                                           opt.shrink_max_rounds, phase_config);
    rep.shrink_rounds = phase.rounds_used;
    rep.shrink_trace = std::move(phase.trace);
    rep.ledger.merge(phase.ledger);
    mapping = std::move(phase.mapping);
    engine_input = std::move(phase.g);
    rep.shrunk_vertices = engine_input.live_count();
    rep.shrunk_edges = engine_input.m;
  }

  // engine_label[t] for every vertex t live at engine input; identity when
  // the residue has no edges left to work on.
  std::vector<uint32_t> engine_label(n);
  std::iota(engine_label.begin(), engine_label.end(), 0u);
  if (engine_input.m > 0) {
    uint32_t n_eng = engine_input.live_count();
    AlgoParams params;
    params.total_space =
        rep.direct ? 2.0 * static_cast<double>(engine_input.m)
                   : static_cast<double>(engine_input.m) +
                         static_cast<double>(n_eng) * lg_pow(n_eng, opt.alpha);
    params.alpha = opt.alpha;
    params.delta = opt.delta;
    params.seed = opt.seed;
    params.strict_audits = opt.strict_audits;
    rep.total_space = params.total_space;

    EngineState st = initialize(std::move(engine_input), params);
    run_until_cliques(st);
    rep.main_iterations = st.iteration;
    rep.max_level = st.max_level_live();
    for (const IterationRow& r : st.trace)
      rep.max_level = std::max(rep.max_level, r.max_level);
    rep.level_cap = st.level_cap;
    rep.engine_trace = st.trace;
    rep.ledger.merge(st.ledger);

    ComponentLabeling lab = finalize_labels(st);
    for (uint32_t t = 0; t < n; ++t)
      if (lab.label[t] != ComponentLabeling::kNoLabel) engine_label[t] = lab.label[t];
  }

  for (uint32_t x = 0; x < n; ++x) {
    if (!in_live[x] || key[x] != kNoVertex) continue;
    if (ran_shrink) {
      uint32_t t = mapping.f[x];
      key[x] = mapping.finished[t] ? t : engine_label[t];
    } else {
      key[x] = engine_label[x];
    }
  }

  std::vector<uint32_t> min_orig(n, kNoVertex);
  for (uint32_t x = 0; x < n; ++x) {
    if (!in_live[x]) continue;
    if (min_orig[key[x]] == kNoVertex) min_orig[key[x]] = x;
  }
  uint32_t components = 0;
  for (uint32_t k = 0; k < n; ++k)
    if (min_orig[k] != kNoVertex) ++components;
  for (uint32_t x = 0; x < n; ++x)
    if (in_live[x]) out.label[x] = min_orig[key[x]];
  out.component_count = components;
  rep.components = components;

  // Composed-space audit: the whole pipeline must fit a constant multiple of
  // the input size in words.
  double composed_bound = 8.0 * static_cast<double>(rep.m + rep.n);
  if (rep.ledger.peak_y > composed_bound) {
    rep.ledger.violations.push_back(
        {"y_composed", 0, rep.ledger.peak_y, composed_bound});
    if (opt.strict_audits)
      throw AuditError("composed pipeline exceeded 8(m+n) words");
  }

  if (opt.verify) {
    rep.verified = true;
    ComponentLabeling oracle = oracle_components(g);
    rep.verify_ok = oracle == out;
  }

  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return {std::move(out), std::move(rep)};
}

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["isolated"] = r.isolated;
  j["delta"] = r.options.delta;
  j["alpha"] = r.options.alpha;
  j["seed"] = r.options.seed;
  j["direct"] = r.direct;
  j["shrink_rounds"] = r.shrink_rounds;
  j["shrunk_vertices"] = r.shrunk_vertices;
  j["shrunk_edges"] = r.shrunk_edges;
  j["total_space"] = r.total_space;
  j["main_iterations"] = r.main_iterations;
  j["max_level"] = r.max_level;
  j["level_cap"] = r.level_cap;
  j["components"] = r.components;
  j["verified"] = r.verified;
  j["verify_ok"] = r.verify_ok;
  if (!r.diameters.empty()) j["diameters"] = r.diameters;
  j["ledger"] = nlohmann::ordered_json::parse(r.ledger.to_json());
  return j.dump(2) + "\n";
}

std::vector<BenchRow> bench_sweep(Family family, uint32_t nmin, uint32_t nmax,
                                  uint32_t seeds, double delta, double alpha) {
  if (nmin < 2 || nmax < nmin || seeds == 0)
    throw InvalidParamsError("bench grid must satisfy 2 <= nmin <= nmax, seeds >= 1");
  std::vector<BenchRow> rows;
  for (uint64_t n = nmin; n <= nmax; n *= 2) {
    GenSpec spec;
    spec.family = family;
    spec.n = static_cast<uint32_t>(n);
    if (family == Family::kGnm) spec.m = 2 * n;
    for (uint32_t s = 0; s < seeds; ++s) {
      spec.seed = s;
      Graph g = generate(spec);
      uint32_t diameter = analytic_diameter(family, g);

      AlgoParams params;
      params.total_space = static_cast<double>(g.m) +
                           static_cast<double>(n) * lg_pow(spec.n, alpha);
      params.alpha = alpha;
      params.delta = delta;
      params.seed = s;
      double t = params.total_space;

      EngineState st = initialize(std::move(g), params);
      run_until_cliques(st);

      BenchRow row;
      row.family = family_name(family);
      row.n = spec.n;
      row.m = st.trace.front().edges;
      row.diameter = diameter;
      row.seed = s;
      row.iterations = st.iteration;
      row.rounds_charged = st.ledger.rounds;
      row.peak_y_over_t = st.ledger.peak_y / t;
      row.peak_b2_over_t = st.ledger.peak_b2 / t;
      row.max_level = 0;
      for (const IterationRow& r : st.trace)
        row.max_level = std::max(row.max_level, r.max_level);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  std::fprintf(f,
               "family,n,m,D,seed,iterations,rounds_charged,peak_y_over_T,"
               "peak_b2_over_T,max_level\n");
  for (const BenchRow& r : rows) {
    std::fprintf(f, "%s,%u,%llu,%u,%llu,%llu,%llu,%.17g,%.17g,%u\n",
                 r.family.c_str(), r.n, static_cast<unsigned long long>(r.m),
                 r.diameter, static_cast<unsigned long long>(r.seed),
                 static_cast<unsigned long long>(r.iterations),
                 static_cast<unsigned long long>(r.rounds_charged),
                 r.peak_y_over_t, r.peak_b2_over_t, r.max_level);
  }
  std::fclose(f);
}

void write_run_trace_csv(const RunReport& r, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path + " for writing");
  std::fprintf(f,
               "phase,index,live,edges,y,b2_sum,max_level,inactive,saturated,"
               "leaders,contracted,edges_added\n");
  for (const ShrinkRoundStats& s : r.shrink_trace) {
    std::fprintf(f, "shrink,%llu,%u,%llu,0,0,0,0,0,0,%u,0\n",
                 static_cast<unsigned long long>(s.round), s.vertices_after,
                 static_cast<unsigned long long>(s.edges_after), s.merges);
  }
  for (const IterationRow& row : r.engine_trace) {
    std::fprintf(f, "main,%llu,%u,%llu,%.17g,%.17g,%u,%u,%u,%u,%u,%llu\n",
                 static_cast<unsigned long long>(row.iteration), row.live,
                 static_cast<unsigned long long>(row.edges), row.y, row.b2_sum,
                 row.max_level, row.inactive, row.saturated, row.leaders,
                 row.contracted,
                 static_cast<unsigned long long>(row.edges_added));
  }
  std::fclose(f);
}

}  // namespace mpcc
