#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mpcc {

// Undirected simple graph over vertex ids 0..n-1. Vertices removed by
// contraction are tombstoned (alive[v] = 0); ids are never reused, so a
// mapping recorded before a contraction stays valid afterwards.
//
// Invariant after normalize(): every adjacency list is sorted, duplicate-free,
// self-loop-free and symmetric, dead vertices have empty lists, and m equals
// the number of undirected edges.
struct Graph {
  uint32_t n = 0;
  uint64_t m = 0;
  std::vector<uint8_t> alive;
  std::vector<std::vector<uint32_t>> adj;

  Graph() = default;
  explicit Graph(uint32_t n_) : n(n_), alive(n_, 1), adj(n_) {}

  bool is_alive(uint32_t v) const { return v < n && alive[v]; }
  uint64_t degree(uint32_t v) const { return adj[v].size(); }

  uint32_t live_count() const {
    uint32_t c = 0;
    for (uint32_t v = 0; v < n; ++v) c += alive[v];
    return c;
  }

  std::vector<uint32_t> live_vertices() const {
    std::vector<uint32_t> out;
    out.reserve(n);
    for (uint32_t v = 0; v < n; ++v)
      if (alive[v]) out.push_back(v);
    return out;
  }

  // Appends an edge without normalizing; call normalize() before reading.
  void add_edge_raw(uint32_t u, uint32_t v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  // Tombstones v and detaches it from its neighbors.
  void remove_vertex(uint32_t v);

  // Sorts and dedups all lists, drops self-loops and edges at dead vertices,
  // restores symmetry, and recomputes m.
  void normalize();

  // Cheap structural sanity check used by tests: sortedness, symmetry, no
  // self-loops, no dead endpoints, m consistent.
  bool check_normalized() const;
};

// Sentinel for "no vertex" in maps over vertex ids.
inline constexpr uint32_t kNoVertex = 0xffffffffu;

// Rebuilds the adjacency with every endpoint sent through map (kNoVertex
// entries mean identity), dropping self-loops and duplicates and recomputing
// m. Callers tombstone vertices that were mapped away.
void rewrite_edges(Graph& g, const std::vector<uint32_t>& map);

// Edge-list file format: optional "# n=<N>" header line, then one "u v" pair
// per line. Blank lines and other "#" comments are ignored on read.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

// "v label" per live vertex, ascending v.
void save_labels(const std::vector<std::pair<uint32_t, uint32_t>>& labels,
                 const std::string& path);

}  // namespace mpcc
