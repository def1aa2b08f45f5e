#include "mpcc/generate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mpcc/errors.hpp"
#include "mpcc/rng.hpp"

namespace mpcc {

namespace {

Graph make_path(uint32_t n) {
  Graph g(n);
  for (uint32_t v = 0; v + 1 < n; ++v) g.add_edge_raw(v, v + 1);
  g.normalize();
  return g;
}

// Cycle on ids [lo, lo+len) appended into an existing graph.
void add_cycle(Graph& g, uint32_t lo, uint32_t len) {
  for (uint32_t i = 0; i + 1 < len; ++i) g.add_edge_raw(lo + i, lo + i + 1);
  g.add_edge_raw(lo + len - 1, lo);
}

void add_path(Graph& g, uint32_t lo, uint32_t len) {
  for (uint32_t i = 0; i + 1 < len; ++i) g.add_edge_raw(lo + i, lo + i + 1);
}

Graph make_gnm(uint32_t n, uint64_t m, uint64_t seed) {
  uint64_t max_m = static_cast<uint64_t>(n) * (n - 1) / 2;
  if (m > max_m) throw InvalidSpecError("gnm: m exceeds n*(n-1)/2");
  Graph g(n);
  Rng rng(mix64(seed ^ static_cast<uint64_t>(RngStream::kGnm)));
  std::unordered_set<uint64_t> used;
  used.reserve(m * 2);
  uint64_t added = 0;
  while (added < m) {
    uint32_t u = static_cast<uint32_t>(rng.bounded(n));
    uint32_t v = static_cast<uint32_t>(rng.bounded(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    uint64_t key = (static_cast<uint64_t>(u) << 32) | v;
    if (!used.insert(key).second) continue;
    g.add_edge_raw(u, v);
    ++added;
  }
  g.normalize();
  return g;
}

}  // namespace

Family family_from_string(const std::string& name) {
  if (name == "path") return Family::kPath;
  if (name == "cycle") return Family::kCycle;
  if (name == "two_cycles") return Family::kTwoCycles;
  if (name == "star") return Family::kStar;
  if (name == "full_binary_tree") return Family::kFullBinaryTree;
  if (name == "grid_2d") return Family::kGrid2d;
  if (name == "erdos_renyi_gnm" || name == "gnm") return Family::kGnm;
  if (name == "caterpillar") return Family::kCaterpillar;
  if (name == "disjoint_union") return Family::kDisjointUnion;
  throw InvalidSpecError("unknown family: " + name);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kPath: return "path";
    case Family::kCycle: return "cycle";
    case Family::kTwoCycles: return "two_cycles";
    case Family::kStar: return "star";
    case Family::kFullBinaryTree: return "full_binary_tree";
    case Family::kGrid2d: return "grid_2d";
    case Family::kGnm: return "erdos_renyi_gnm";
    case Family::kCaterpillar: return "caterpillar";
    case Family::kDisjointUnion: return "disjoint_union";
  }
  return "?";
}

Graph generate(const GenSpec& spec) {
  const uint32_t n = spec.n;
  if (n == 0) throw InvalidSpecError("n must be positive");

  switch (spec.family) {
    case Family::kPath:
      return make_path(n);

    case Family::kCycle: {
      if (n < 3) throw InvalidSpecError("cycle needs n >= 3");
      Graph g(n);
      add_cycle(g, 0, n);
      g.normalize();
      return g;
    }

    case Family::kTwoCycles: {
      if (n % 2 != 0 || n < 6) throw InvalidSpecError("two_cycles needs even n >= 6");
      Graph g(n);
      add_cycle(g, 0, n / 2);
      add_cycle(g, n / 2, n / 2);
      g.normalize();
      return g;
    }

    case Family::kStar: {
      Graph g(n);
      for (uint32_t v = 1; v < n; ++v) g.add_edge_raw(0, v);
      g.normalize();
      return g;
    }

    case Family::kFullBinaryTree: {
      // Heap layout: parent of v is (v-1)/2.
      Graph g(n);
      for (uint32_t v = 1; v < n; ++v) g.add_edge_raw((v - 1) / 2, v);
      g.normalize();
      return g;
    }

    case Family::kGrid2d: {
      uint32_t rows = spec.rows, cols = spec.cols;
      if (rows == 0 || cols == 0) {
        rows = static_cast<uint32_t>(std::sqrt(static_cast<double>(n)));
        if (rows == 0) rows = 1;
        cols = (n + rows - 1) / rows;
      }
      if (static_cast<uint64_t>(rows) * cols != n)
        throw InvalidSpecError("grid_2d needs rows*cols == n");
      Graph g(n);
      for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c = 0; c < cols; ++c) {
          uint32_t v = r * cols + c;
          if (c + 1 < cols) g.add_edge_raw(v, v + 1);
          if (r + 1 < rows) g.add_edge_raw(v, v + cols);
        }
      g.normalize();
      return g;
    }

    case Family::kGnm:
      return make_gnm(n, spec.m, spec.seed);

    case Family::kCaterpillar: {
      // Spine path of ceil(n/2) vertices, legs attached round-robin.
      uint32_t spine = (n + 1) / 2;
      Graph g(n);
      add_path(g, 0, spine);
      for (uint32_t v = spine; v < n; ++v) g.add_edge_raw((v - spine) % spine, v);
      g.normalize();
      return g;
    }

    case Family::kDisjointUnion: {
      // Alternating path/cycle blocks of near-equal size.
      uint32_t parts = std::max(1u, spec.parts);
      if (parts > n) throw InvalidSpecError("disjoint_union needs parts <= n");
      Graph g(n);
      uint32_t base = n / parts, extra = n % parts, lo = 0;
      for (uint32_t p = 0; p < parts; ++p) {
        uint32_t len = base + (p < extra ? 1 : 0);
        if (p % 2 == 1 && len >= 3)
          add_cycle(g, lo, len);
        else
          add_path(g, lo, len);
        lo += len;
      }
      g.normalize();
      return g;
    }
  }
  throw InvalidSpecError("unhandled family");
}

}  // namespace mpcc
