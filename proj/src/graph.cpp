#include "mpcc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>

#include "mpcc/errors.hpp"

namespace mpcc {

void Graph::remove_vertex(uint32_t v) {
  if (!is_alive(v)) return;
  for (uint32_t u : adj[v]) {
    auto& lu = adj[u];
    auto it = std::lower_bound(lu.begin(), lu.end(), v);
    if (it != lu.end() && *it == v) lu.erase(it);
  }
  m -= adj[v].size();
  std::vector<uint32_t>().swap(adj[v]);
  alive[v] = 0;
}

void Graph::normalize() {
  for (uint32_t v = 0; v < n; ++v) {
    if (!alive[v]) {
      std::vector<uint32_t>().swap(adj[v]);
      continue;
    }
    auto& l = adj[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    l.erase(std::remove_if(l.begin(), l.end(),
                           [&](uint32_t u) { return u == v || u >= n || !alive[u]; }),
            l.end());
  }
  // Drop one-sided edges (possible when a caller edited lists directly).
  uint64_t half = 0;
  for (uint32_t v = 0; v < n; ++v) {
    auto& l = adj[v];
    l.erase(std::remove_if(l.begin(), l.end(),
                           [&](uint32_t u) {
                             const auto& lu = adj[u];
                             return !std::binary_search(lu.begin(), lu.end(), v);
                           }),
            l.end());
    half += l.size();
  }
  m = half / 2;
}

bool Graph::check_normalized() const {
  uint64_t half = 0;
  for (uint32_t v = 0; v < n; ++v) {
    if (!alive[v]) {
      if (!adj[v].empty()) return false;
      continue;
    }
    const auto& l = adj[v];
    for (size_t i = 0; i < l.size(); ++i) {
      uint32_t u = l[i];
      if (u == v || u >= n || !alive[u]) return false;
      if (i > 0 && l[i - 1] >= u) return false;
      if (!std::binary_search(adj[u].begin(), adj[u].end(), v)) return false;
    }
    half += l.size();
  }
  return half == 2 * m;
}

void rewrite_edges(Graph& g, const std::vector<uint32_t>& map) {
  const uint32_t n = g.n;
  auto tgt = [&](uint32_t v) {
    uint32_t t = map[v];
    return t == kNoVertex ? v : t;
  };

  std::vector<uint32_t> moved;
  uint64_t donated = 0;
  for (uint32_t v = 0; v < n; ++v) {
    if (!g.alive[v] || tgt(v) == v) continue;
    moved.push_back(v);
    donated += g.adj[v].size();
  }
  if (moved.empty()) return;  // identity map: every row would rebuild unchanged

  // Only three kinds of rows can change: movers, their targets, and rows that
  // store a moved id as a value. While those hold a minority of the edge ends,
  // rebuilding just them beats the full pass; both branches produce identical
  // adjacencies and m.
  std::vector<uint8_t> dirty(n, 0);
  uint64_t dirty_half = 0;
  auto mark = [&](uint32_t x) {
    if (!dirty[x]) {
      dirty[x] = 1;
      dirty_half += g.adj[x].size();
    }
  };
  for (uint32_t v : moved) {
    mark(v);
    mark(tgt(v));
    for (uint32_t u : g.adj[v]) mark(u);
  }

  if (dirty_half <= g.m) {
    std::vector<std::pair<uint32_t, uint32_t>> gift;  // (receiving row, value)
    gift.reserve(donated);
    for (uint32_t v : moved) {
      uint32_t t = tgt(v);
      for (uint32_t u : g.adj[v]) {
        uint32_t tu = tgt(u);
        if (tu != t) gift.emplace_back(t, tu);
      }
    }
    std::sort(gift.begin(), gift.end());

    std::vector<uint32_t> who;
    std::vector<std::vector<uint32_t>> fresh;
    who.reserve(moved.size());
    fresh.reserve(moved.size());
    uint64_t half = 0;
    for (uint32_t v = 0; v < n; ++v) half += g.adj[v].size();
    half -= dirty_half;
    size_t gi = 0;
    for (uint32_t x = 0; x < n; ++x) {
      if (!dirty[x]) continue;
      std::vector<uint32_t> row;
      if (g.alive[x] && tgt(x) == x) {
        row.reserve(g.adj[x].size());
        for (uint32_t u : g.adj[x]) {
          uint32_t tu = tgt(u);
          if (tu != x) row.push_back(tu);
        }
      }
      for (; gi < gift.size() && gift[gi].first == x; ++gi)
        row.push_back(gift[gi].second);
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      half += row.size();
      who.push_back(x);
      fresh.push_back(std::move(row));
    }
    for (size_t i = 0; i < who.size(); ++i) g.adj[who[i]] = std::move(fresh[i]);
    g.m = half / 2;
    return;
  }

  std::vector<uint32_t> cnt(n, 0);
  for (uint32_t v = 0; v < n; ++v) {
    if (!g.alive[v] || g.adj[v].empty()) continue;
    cnt[tgt(v)] += static_cast<uint32_t>(g.adj[v].size());
  }
  std::vector<std::vector<uint32_t>> fresh(n);
  for (uint32_t v = 0; v < n; ++v)
    if (cnt[v]) fresh[v].reserve(cnt[v]);
  for (uint32_t v = 0; v < n; ++v) {
    if (!g.alive[v]) continue;
    uint32_t tv = tgt(v);
    for (uint32_t u : g.adj[v]) {
      uint32_t tu = tgt(u);
      if (tu != tv) fresh[tv].push_back(tu);
    }
  }
  // Contractions concatenate whole neighborhoods, so rows arrive with heavy
  // duplication; dropping repeats against a mark array before sorting leaves
  // only distinct values to order.
  std::vector<uint32_t> seen(n, kNoVertex);
  uint64_t half = 0;
  for (uint32_t v = 0; v < n; ++v) {
    auto& l = fresh[v];
    size_t keep = 0;
    for (uint32_t u : l) {
      if (seen[u] == v) continue;
      seen[u] = v;
      l[keep++] = u;
    }
    l.resize(keep);
    std::sort(l.begin(), l.end());
    half += l.size();
    g.adj[v] = std::move(l);
  }
  g.m = half / 2;
}

Graph load_edge_list(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open " + path);

  std::vector<std::pair<uint32_t, uint32_t>> edges;
  uint64_t n_header = 0;
  uint64_t max_id = 0;
  bool any = false;

  char line[256];
  while (std::fgets(line, sizeof line, f)) {
    char* s = line;
    while (*s == ' ' || *s == '\t') ++s;
    if (*s == '\0' || *s == '\n' || *s == '\r') continue;
    if (*s == '#') {
      unsigned long long hn = 0;
      if (std::sscanf(s, "# n=%llu", &hn) == 1) n_header = hn;
      continue;
    }
    unsigned long long a = 0, b = 0;
    if (std::sscanf(s, "%llu %llu", &a, &b) != 2) {
      std::fclose(f);
      throw InvalidInputError("bad edge line in " + path + ": " + s);
    }
    edges.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
    max_id = std::max<uint64_t>(max_id, std::max(a, b));
    any = true;
  }
  std::fclose(f);

  uint64_t n = n_header;
  if (any) n = std::max<uint64_t>(n, max_id + 1);
  if (n > (1ull << 31)) throw InvalidInputError("vertex ids too large in " + path);

  Graph g(static_cast<uint32_t>(n));
  for (auto [u, v] : edges) g.add_edge_raw(u, v);
  g.normalize();
  return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open " + path + " for writing");
  std::fprintf(f, "# n=%u\n", g.n);
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.adj[v])
      if (v < u) std::fprintf(f, "%u %u\n", v, u);
  std::fclose(f);
}

void save_labels(const std::vector<std::pair<uint32_t, uint32_t>>& labels,
                 const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open " + path + " for writing");
  for (auto [v, label] : labels) std::fprintf(f, "%u %u\n", v, label);
  std::fclose(f);
}

}  // namespace mpcc
