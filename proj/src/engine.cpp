#include "mpcc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "mpcc/errors.hpp"
#include "mpcc/rng.hpp"

namespace mpcc {

namespace {

constexpr uint32_t kNone = 0xffffffffu;

// True when every live vertex is active on one common level. Adjacency rows
// only ever hold live ids, so in this state every row entry is an active
// same-level vertex and the per-level degree counts below collapse to row
// sizes. The early and middle iterations on flat families spend almost all
// their time in those counts, hence the fast paths keyed off this.
bool flat_state(const EngineState& s) {
  const Graph& g = s.g;
  uint32_t lv = kNone;
  for (uint32_t v = 0; v < g.n; ++v) {
    if (!g.alive[v]) continue;
    if (!s.active[v]) return false;
    if (lv == kNone)
      lv = s.level[v];
    else if (s.level[v] != lv)
      return false;
  }
  return true;
}

void ensure_budget(EngineState& s, uint32_t lvl) {
  // Each entry is recomputed from the closed form, never by squaring the
  // previous one, so the table has no accumulated rounding drift.
  while (s.budget_by_level.size() <= lvl) {
    uint32_t l = static_cast<uint32_t>(s.budget_by_level.size());
    double e = std::pow(s.params.growth_exponent, static_cast<double>(l));
    s.budget_by_level.push_back(std::pow(s.beta0, e));
  }
}

// Trace row plus end-of-iteration space audit, both over the current state.
// y counts the edges plus every active vertex's unspent budget; the square
// sum is accumulated per level so float order never depends on vertex order.
void book_iteration(EngineState& s) {
  const Graph& g = s.g;
  IterationRow r;
  r.iteration = s.iteration;
  r.edges = g.m;

  const bool flat = flat_state(s);
  double slack = 0.0;
  uint32_t live = 0, inactive = 0, max_level = 0;
  std::vector<uint64_t> per_level(s.budget_by_level.size(), 0);
  for (uint32_t v = 0; v < g.n; ++v) {
    if (!g.alive[v]) continue;
    ++live;
    uint32_t lv = s.level[v];
    max_level = std::max(max_level, lv);
    if (per_level.size() <= lv) per_level.resize(lv + 1, 0);
    ++per_level[lv];
    if (!s.active[v]) {
      ++inactive;
      continue;
    }
    uint64_t dv = g.adj[v].size();
    if (!flat) {
      dv = 0;
      for (uint32_t u : g.adj[v])
        if (s.level[u] >= lv) ++dv;
    }
    double rem = s.budget_at(lv) - static_cast<double>(dv);
    if (rem > 0.0) slack += rem;
  }
  double b2 = 0.0;
  for (size_t l = 0; l < per_level.size(); ++l) {
    if (!per_level[l]) continue;
    ensure_budget(s, static_cast<uint32_t>(l));
    double b = s.budget_at(static_cast<uint32_t>(l));
    b2 += static_cast<double>(per_level[l]) * b * b;
  }

  r.live = live;
  r.inactive = inactive;
  r.max_level = max_level;
  r.y = static_cast<double>(g.m) + slack;
  r.b2_sum = b2;
  r.saturated = s.last_saturated;
  r.leaders = s.last_leaders;
  r.contracted = s.last_contracted;
  r.edges_added = s.last_edges_added;
  s.trace.push_back(r);

  audit_iteration(s.ledger, s.config, s.iteration, g.m, slack, b2);
}

}  // namespace

uint32_t EngineState::max_level_live() const {
  uint32_t mx = 0;
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v]) mx = std::max(mx, level[v]);
  return mx;
}

uint64_t default_max_iterations(uint32_t n0) {
  double l = std::log2(static_cast<double>(std::max<uint32_t>(1, n0)));
  return static_cast<uint64_t>(std::ceil(20.0 * (l + 2.0) * (l + 2.0)));
}

uint32_t level_cap_for(double beta0, uint32_t n0, double growth_exponent) {
  if (n0 < 2 || beta0 <= 1.0) return 0;
  double ratio = std::log(static_cast<double>(n0)) / std::log(beta0);
  if (ratio <= 1.0) return 0;
  double cap = std::ceil(std::log(ratio) / std::log(growth_exponent));
  return cap <= 0.0 ? 0u : static_cast<uint32_t>(cap);
}

EngineState initialize(Graph g, const AlgoParams& params) {
  if (!(params.total_space > 0.0) || !std::isfinite(params.total_space))
    throw InvalidParamsError("total_space must be positive and finite");
  if (!(params.delta > 0.0) || !(params.delta < 1.0))
    throw InvalidParamsError("delta must lie in (0,1)");
  if (!(params.growth_exponent > 1.0))
    throw InvalidParamsError("growth_exponent must exceed 1");
  if (!(params.leader_coeff > 0.0))
    throw InvalidParamsError("leader_coeff must be positive");
  if (!(params.space_factor >= 1.0))
    throw InvalidParamsError("space_factor must be at least 1");

  g.normalize();
  if (static_cast<double>(g.m) > params.total_space)
    throw InvalidParamsError("total_space is below the input edge count");

  EngineState s;
  s.g = std::move(g);
  s.params = params;
  s.n0 = s.g.live_count();
  s.beta0 = s.n0 ? std::sqrt(params.total_space / static_cast<double>(s.n0)) : 0.0;
  s.budget_cap =
      params.budget_cap > 0.0 ? params.budget_cap : static_cast<double>(s.n0);
  s.level_cap = level_cap_for(s.beta0, s.n0, params.growth_exponent);
  if (s.params.max_iterations == 0)
    s.params.max_iterations = default_max_iterations(s.n0);

  s.config.delta = params.delta;
  s.config.n0 = std::max<uint64_t>(1, s.n0);
  s.config.total_space = static_cast<uint64_t>(params.total_space);
  s.config.space_factor = params.space_factor;
  s.config.strict = params.strict_audits;

  const uint32_t n = s.g.n;
  s.level.assign(n, 0);
  s.active.assign(n, 0);
  for (uint32_t v = 0; v < n; ++v) s.active[v] = s.g.alive[v];
  s.next_ptr.resize(n);
  std::iota(s.next_ptr.begin(), s.next_ptr.end(), 0u);
  s.input_alive = s.g.alive;
  s.rep.resize(n);
  std::iota(s.rep.begin(), s.rep.end(), 0u);
  ensure_budget(s, 0);

  // Initialization is free: charged rounds stay an exact multiple of the
  // per-iteration bundle so the ledger can be recomputed from the trace.
  book_iteration(s);
  return s;
}

// One simultaneous doubling step. Every active vertex v with spare budget
// k = floor(b(v)) - d(v) picks up to k new vertices reachable through a
// same-level neighbor (candidates share v's level). Current neighbors and v
// itself are never candidates: every pick creates an edge, so a vertex with
// spare budget and an unreached 2-hop always makes progress, and cliques are
// a fixed point because they have no new candidates. d(v) counts neighbors
// at v's level or above.
//
// Selection is deterministic. When the candidate multiset fits the touch
// budget (about one budget's worth of slots, max(1024, k + deg)) the pick is
// exactly the k smallest ids; past it the scan keeps its (neighbor,
// candidate) ascending order and stops at k picks, which bounds work per
// vertex while preserving every budget and termination argument.
void connect_two_hops(EngineState& s) {
  Graph& g = s.g;
  s.last_edges_added = 0;
  s.last_saturated = 0;
  s.last_leaders = 0;
  s.last_contracted = 0;
  const uint32_t n = g.n;
  const uint64_t m_before = g.m;

  charge_primitive(s.ledger, s.config, Primitive::kSort, 2 * m_before, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kFilter, 2 * m_before, s.iteration);

  // sl[v]: neighbors sharing v's level (candidate multiplicity through v);
  // d(v) counts neighbors at v's level or above, one sweep computes both.
  // Flat state: both are the row size.
  const bool flat = flat_state(s);
  std::vector<uint32_t> sl(n, 0);
  std::vector<uint64_t> want(n, 0);
  for (uint32_t v = 0; v < n; ++v) {
    if (!g.alive[v]) continue;
    uint32_t c;
    uint64_t dv;
    if (flat) {
      c = static_cast<uint32_t>(g.adj[v].size());
      dv = g.adj[v].size();
    } else {
      const uint32_t lv = s.level[v];
      c = 0;
      dv = 0;
      for (uint32_t u : g.adj[v]) {
        if (s.level[u] == lv) ++c;
        if (s.level[u] >= lv) ++dv;
      }
    }
    sl[v] = c;
    if (!s.active[v]) continue;
    double spare = std::floor(s.budget(v)) - static_cast<double>(dv);
    if (spare > 0.0) want[v] = static_cast<uint64_t>(spare);
  }

  std::vector<uint32_t> stamp(n, kNone);
  std::vector<uint32_t> pool;

  auto select = [&](auto&& emit) {
    for (uint32_t v = 0; v < n; ++v) {
      uint64_t k = want[v];
      if (!k) continue;
      const uint32_t lv = s.level[v];
      uint64_t mult = 0;
      if (flat) {
        for (uint32_t w : g.adj[v]) mult += sl[w];
      } else {
        for (uint32_t w : g.adj[v])
          if (s.level[w] == lv) mult += sl[w];
      }
      if (!mult) continue;
      uint64_t touch_budget =
          std::max<uint64_t>(1024, k + g.adj[v].size());
      pool.clear();
      for (uint32_t u : g.adj[v]) stamp[u] = v;
      if (mult <= touch_budget) {
        if (flat) {
          for (uint32_t w : g.adj[v]) {
            for (uint32_t u : g.adj[w]) {
              if (u == v || stamp[u] == v) continue;
              stamp[u] = v;
              pool.push_back(u);
            }
          }
        } else {
          for (uint32_t w : g.adj[v]) {
            if (s.level[w] != lv) continue;
            for (uint32_t u : g.adj[w]) {
              if (u == v || s.level[u] != lv || stamp[u] == v) continue;
              stamp[u] = v;
              pool.push_back(u);
            }
          }
        }
        std::sort(pool.begin(), pool.end());
        if (pool.size() > k) pool.resize(k);
      } else if (flat) {
        uint64_t touched = 0;
        bool stop = false;
        for (uint32_t w : g.adj[v]) {
          if (stop) break;
          for (uint32_t u : g.adj[w]) {
            ++touched;
            if (u != v && stamp[u] != v) {
              stamp[u] = v;
              pool.push_back(u);
              if (pool.size() == k) {
                stop = true;
                break;
              }
            }
            if (touched >= touch_budget) {
              stop = true;
              break;
            }
          }
        }
      } else {
        uint64_t touched = 0;
        bool stop = false;
        for (uint32_t w : g.adj[v]) {
          if (stop) break;
          if (s.level[w] != lv) continue;
          for (uint32_t u : g.adj[w]) {
            ++touched;
            if (u != v && s.level[u] == lv && stamp[u] != v) {
              stamp[u] = v;
              pool.push_back(u);
              if (pool.size() == k) {
                stop = true;
                break;
              }
            }
            if (touched >= touch_budget) {
              stop = true;
              break;
            }
          }
        }
      }
      for (uint32_t u : pool) emit(v, u);
    }
  };

  std::vector<std::vector<uint32_t>> incoming(n);
  select([&](uint32_t v, uint32_t u) {
    incoming[v].push_back(u);
    incoming[u].push_back(v);
  });
  stamp.clear();
  stamp.shrink_to_fit();

  // Per-vertex merge, in place from the back. Picks are never existing
  // neighbors (the stamp excludes them, and a picker of v cannot already be
  // adjacent to v by symmetry), so the two sorted runs are disjoint and a
  // plain merge is a union.
  uint64_t degsum = 0;
  for (uint32_t v = 0; v < n; ++v) {
    auto& in = incoming[v];
    if (in.empty()) {
      degsum += g.adj[v].size();
      continue;
    }
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    auto& a = g.adj[v];
    size_t i = a.size(), j = in.size(), w = i + j;
    a.resize(w);
    while (j > 0) {
      if (i > 0 && a[i - 1] > in[j - 1])
        a[--w] = a[--i];
      else
        a[--w] = in[--j];
    }
    degsum += a.size();
    std::vector<uint32_t>().swap(in);
  }
  g.m = degsum / 2;
  s.last_edges_added = g.m - m_before;

  charge_primitive(s.ledger, s.config, Primitive::kPrefixSum, g.live_count(), s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kDedup, 2 * g.m, s.iteration);
}

// Every vertex that sees a strictly higher level in its neighborhood points
// at the highest such neighbor (lowest id on ties), goes inactive, and hands
// its merge class over; edges move one pointer hop, never a chain. Inactive
// vertices keep a strictly higher neighbor across every other step, so the
// pointer refresh here always finds a target for them. Vertices left with no
// edges while inactive hold no classes and are dropped.
void relabel_inter_level(EngineState& s) {
  Graph& g = s.g;
  const uint32_t n = g.n;
  const uint64_t m_entry = g.m;
  const uint32_t live_entry = g.live_count();

  // Flat state: no vertex sees a higher level, the pointer map is identity.
  std::vector<uint32_t> np(n, kNone);
  bool any = false;
  if (flat_state(s)) {
    for (uint32_t v = 0; v < n; ++v)
      if (g.alive[v]) np[v] = v;
  } else {
    for (uint32_t v = 0; v < n; ++v) {
      if (!g.alive[v]) continue;
      uint32_t best = kNone;
      uint32_t best_level = s.level[v];
      for (uint32_t u : g.adj[v]) {
        if (s.level[u] > best_level ||
            (s.level[u] == best_level && best != kNone && u < best)) {
          best = u;
          best_level = s.level[u];
        }
      }
      if (best != kNone) {
        np[v] = best;
        any = true;
      } else {
        np[v] = v;
      }
    }
  }

  charge_primitive(s.ledger, s.config, Primitive::kSort, 2 * m_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kPredecessor, live_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kSort, 2 * m_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kFilter, 2 * m_entry, s.iteration);

  if (any) {
    for (uint32_t v = 0; v < n; ++v) {
      if (!g.alive[v]) continue;
      if (np[v] != v) {
        s.active[v] = 0;
        s.next_ptr[v] = np[v];
      } else {
        s.next_ptr[v] = v;
      }
    }
    for (uint32_t x = 0; x < n; ++x)
      if (s.input_alive[x]) s.rep[x] = np[s.rep[x]];

    rewrite_edges(g, np);

    for (uint32_t v = 0; v < n; ++v)
      if (g.alive[v] && !s.active[v] && g.adj[v].empty()) g.alive[v] = 0;
  }

  charge_primitive(s.ledger, s.config, Primitive::kDedup, 2 * g.m, s.iteration);
}

// Crowded vertices level up or merge into ones that do. Saturation needs
// strictly more active same-level neighbors than b(v) and only applies below
// the budget cap; it then spreads one hop across same-level edges. Saturated
// vertices lead with probability min(1, leader_coeff*ln(n0)/b(v)); leaders
// climb one level, everyone else saturated joins the lowest-id leader of its
// own old level within two hops, when one exists. Contractions are batched:
// leaders absorb, absorbed vertices vanish this step, so the map has depth 1.
void relabel_intra_level(EngineState& s) {
  Graph& g = s.g;
  const uint32_t n = g.n;
  const uint64_t m_entry = g.m;
  const uint32_t live_entry = g.live_count();
  s.last_saturated = 0;
  s.last_leaders = 0;
  s.last_contracted = 0;

  charge_primitive(s.ledger, s.config, Primitive::kSort, 2 * m_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kSort, live_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kFilter, 2 * m_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kPrefixSum, live_entry, s.iteration);
  charge_primitive(s.ledger, s.config, Primitive::kPredecessor, live_entry, s.iteration);

  // Flat state: the active same-level neighbor count is the row size.
  const bool flat = flat_state(s);
  std::vector<uint8_t> sat(n, 0);
  bool any_sat = false;
  for (uint32_t v = 0; v < n; ++v) {
    if (!g.alive[v] || !s.active[v]) continue;
    double b = s.budget(v);
    if (!(b < s.budget_cap)) continue;
    uint64_t same = g.adj[v].size();
    if (!flat) {
      same = 0;
      for (uint32_t u : g.adj[v])
        if (s.active[u] && s.level[u] == s.level[v]) ++same;
    }
    if (static_cast<double>(same) > b) {
      sat[v] = 1;
      any_sat = true;
    }
  }
  if (any_sat) {
    std::vector<uint8_t> sat2 = sat;
    for (uint32_t v = 0; v < n; ++v) {
      if (!g.alive[v] || !s.active[v] || sat[v]) continue;
      for (uint32_t u : g.adj[v]) {
        if (sat[u] && (flat || s.level[u] == s.level[v])) {
          sat2[v] = 1;
          break;
        }
      }
    }
    sat.swap(sat2);
  }

  std::vector<uint32_t> saturated;
  for (uint32_t v = 0; v < n; ++v)
    if (sat[v]) saturated.push_back(v);
  s.last_saturated = static_cast<uint32_t>(saturated.size());
  if (saturated.empty()) {
    charge_primitive(s.ledger, s.config, Primitive::kDedup, 2 * g.m, s.iteration);
    return;
  }

  // Coins are drawn against pre-bump budgets, then all leaders move at once.
  std::vector<uint32_t> leaders;
  std::vector<uint8_t> is_leader(n, 0);
  double ln_n0 = std::log(static_cast<double>(std::max<uint32_t>(2, s.n0)));
  for (uint32_t v : saturated) {
    bool lead;
    if (s.params.leader_override) {
      lead = s.params.leader_override(v);
    } else {
      double p = std::min(1.0, s.params.leader_coeff * ln_n0 / s.budget(v));
      lead = counter_u01(s.params.seed, RngStream::kLeaderCoin, s.iteration, v) < p;
    }
    if (lead) {
      leaders.push_back(v);
      is_leader[v] = 1;
    }
  }
  std::vector<uint32_t> old_level(leaders.size());
  for (size_t i = 0; i < leaders.size(); ++i) {
    old_level[i] = s.level[leaders[i]];
    s.level[leaders[i]] += 1;
    ensure_budget(s, s.level[leaders[i]]);
  }
  s.last_leaders = static_cast<uint32_t>(leaders.size());

  // Lowest-id leader of one's own old level within two hops, found with a
  // min over leader-adjacency relaxations; the middle vertex is arbitrary.
  std::vector<uint32_t> lvls = old_level;
  std::sort(lvls.begin(), lvls.end());
  lvls.erase(std::unique(lvls.begin(), lvls.end()), lvls.end());

  std::vector<uint32_t> cmap(n, kNone);
  std::vector<uint32_t> min_ldr(n, kNone);
  std::vector<uint32_t> tag(n, kNone);
  uint32_t cur = 0;
  uint32_t contracted = 0;
  for (uint32_t lam : lvls) {
    ++cur;
    for (size_t i = 0; i < leaders.size(); ++i) {
      if (old_level[i] != lam) continue;
      uint32_t u = leaders[i];
      for (uint32_t w : g.adj[u]) {
        if (tag[w] != cur) {
          tag[w] = cur;
          min_ldr[w] = u;
        } else if (u < min_ldr[w]) {
          min_ldr[w] = u;
        }
      }
    }
    for (uint32_t v = 0; v < n; ++v) {
      if (!sat[v] || is_leader[v] || s.level[v] != lam) continue;
      uint32_t tgt = tag[v] == cur ? min_ldr[v] : kNone;
      for (uint32_t w : g.adj[v])
        if (tag[w] == cur && min_ldr[w] < tgt) tgt = min_ldr[w];
      if (tgt != kNone) {
        cmap[v] = tgt;
        ++contracted;
      }
    }
  }

  if (contracted) {
    for (uint32_t x = 0; x < n; ++x) {
      if (!s.input_alive[x]) continue;
      uint32_t r = s.rep[x];
      if (cmap[r] != kNone) s.rep[x] = cmap[r];
    }
    rewrite_edges(g, cmap);
    for (uint32_t v = 0; v < n; ++v)
      if (cmap[v] != kNone) g.alive[v] = 0;
    s.last_contracted = contracted;
  }

  charge_primitive(s.ledger, s.config, Primitive::kDedup, 2 * g.m, s.iteration);
}

void run_until_cliques(EngineState& s, const EngineObserver& observer) {
  if (observer) observer(s, 0);
  while (!is_clique_partition(s.g)) {
    if (s.iteration >= s.params.max_iterations)
      throw TerminationOverflowError(
          "main loop exceeded " + std::to_string(s.params.max_iterations) +
          " iterations without reaching a clique partition");
    s.iteration += 1;
    connect_two_hops(s);
    relabel_inter_level(s);
    relabel_intra_level(s);
    book_iteration(s);
    if (observer) observer(s, s.iteration);
  }
}

ComponentLabeling finalize_labels(const EngineState& s) {
  ComponentLabeling comp = oracle_components(s.g);
  ComponentLabeling out;
  out.label.assign(s.g.n, ComponentLabeling::kNoLabel);
  std::vector<uint32_t> min_input(s.g.n, ComponentLabeling::kNoLabel);
  for (uint32_t x = 0; x < s.g.n; ++x) {
    if (!s.input_alive[x]) continue;
    uint32_t key = comp.label[s.rep[x]];
    if (min_input[key] == ComponentLabeling::kNoLabel) min_input[key] = x;
  }
  uint32_t count = 0;
  for (uint32_t x = 0; x < s.g.n; ++x) {
    if (min_input[x] != ComponentLabeling::kNoLabel) ++count;
  }
  for (uint32_t x = 0; x < s.g.n; ++x) {
    if (!s.input_alive[x]) continue;
    out.label[x] = min_input[comp.label[s.rep[x]]];
  }
  out.component_count = count;
  return out;
}

}  // namespace mpcc
