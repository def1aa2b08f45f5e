#include "mpcc/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace mpcc {

namespace {

constexpr uint32_t kUnset = 0xffffffffu;

struct UnionFind {
  std::vector<uint32_t> parent;
  std::vector<uint32_t> size;

  explicit UnionFind(uint32_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0u);
  }

  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

// Turns a root-per-vertex assignment into min-id canonical labels.
ComponentLabeling canonicalize(const Graph& g, const std::vector<uint32_t>& root) {
  ComponentLabeling out;
  out.label.assign(g.n, ComponentLabeling::kNoLabel);
  std::vector<uint32_t> min_of_root(g.n, kUnset);
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v] && min_of_root[root[v]] == kUnset) min_of_root[root[v]] = v;
  uint32_t count = 0;
  for (uint32_t v = 0; v < g.n; ++v) {
    if (!g.alive[v]) continue;
    out.label[v] = min_of_root[root[v]];
    if (out.label[v] == v) ++count;
  }
  out.component_count = count;
  return out;
}

}  // namespace

ComponentLabeling oracle_components(const Graph& g) {
  UnionFind uf(g.n);
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.adj[v])
      if (v < u) uf.unite(v, u);
  std::vector<uint32_t> root(g.n, 0);
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v]) root[v] = uf.find(v);
  return canonicalize(g, root);
}

ComponentLabeling bfs_components(const Graph& g) {
  std::vector<uint32_t> root(g.n, kUnset);
  std::vector<uint32_t> queue;
  for (uint32_t s = 0; s < g.n; ++s) {
    if (!g.alive[s] || root[s] != kUnset) continue;
    root[s] = s;
    queue.assign(1, s);
    for (size_t head = 0; head < queue.size(); ++head) {
      uint32_t v = queue[head];
      for (uint32_t u : g.adj[v]) {
        if (root[u] == kUnset) {
          root[u] = s;
          queue.push_back(u);
        }
      }
    }
  }
  return canonicalize(g, root);
}

bool is_clique_partition(const Graph& g) {
  // In a clique partition both endpoints of every edge have equal degree, so
  // the cheap scan below rejects almost all non-terminal graphs in O(1).
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.adj[v])
      if (g.adj[u].size() != g.adj[v].size()) return false;

  ComponentLabeling cl = oracle_components(g);
  std::vector<uint32_t> comp_size(g.n, 0);
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v]) ++comp_size[cl.label[v]];
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v] && g.adj[v].size() + 1 != comp_size[cl.label[v]]) return false;
  return true;
}

std::vector<uint32_t> bfs_distances(const Graph& g, uint32_t src) {
  std::vector<uint32_t> dist(g.n, kUnset);
  std::vector<uint32_t> queue;
  dist[src] = 0;
  queue.assign(1, src);
  for (size_t head = 0; head < queue.size(); ++head) {
    uint32_t v = queue[head];
    for (uint32_t u : g.adj[v]) {
      if (dist[u] == kUnset) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<uint32_t> exact_component_diameters(const Graph& g) {
  ComponentLabeling cl = oracle_components(g);
  std::vector<uint32_t> diam(g.n, 0);
  for (uint32_t s = 0; s < g.n; ++s) {
    if (!g.alive[s]) continue;
    auto dist = bfs_distances(g, s);
    uint32_t& d = diam[cl.label[s]];
    for (uint32_t v = 0; v < g.n; ++v)
      if (dist[v] != kUnset && dist[v] > d) d = dist[v];
  }
  std::vector<uint32_t> out;
  for (uint32_t v = 0; v < g.n; ++v)
    if (g.alive[v] && cl.label[v] == v) out.push_back(diam[v]);
  return out;
}

uint32_t exact_diameter(const Graph& g) {
  uint32_t best = 0;
  for (uint32_t d : exact_component_diameters(g)) best = std::max(best, d);
  return best;
}

uint32_t double_sweep_diameter_estimate(const Graph& g) {
  std::vector<uint8_t> seen(g.n, 0);
  uint32_t best = 0;
  for (uint32_t s = 0; s < g.n; ++s) {
    if (!g.alive[s] || seen[s]) continue;
    auto d1 = bfs_distances(g, s);
    uint32_t far = s, far_d = 0;
    for (uint32_t v = 0; v < g.n; ++v) {
      if (d1[v] == kUnset) continue;
      seen[v] = 1;
      if (d1[v] > far_d || (d1[v] == far_d && v < far)) {
        far_d = d1[v];
        far = v;
      }
    }
    auto d2 = bfs_distances(g, far);
    for (uint32_t v = 0; v < g.n; ++v)
      if (d2[v] != kUnset && d2[v] > best) best = d2[v];
  }
  return best;
}

}  // namespace mpcc
