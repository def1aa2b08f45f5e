#pragma once

#include <cstdint>
#include <string>

#include "mpcc/graph.hpp"

namespace mpcc {

enum class Family {
  kPath,
  kCycle,
  kTwoCycles,
  kStar,
  kFullBinaryTree,
  kGrid2d,
  kGnm,
  kCaterpillar,
  kDisjointUnion,
};

Family family_from_string(const std::string& name);  // InvalidSpecError on unknown
const char* family_name(Family f);

// Deterministic test-graph description. Output is a pure function of the
// spec, byte for byte, including the seeded families.
struct GenSpec {
  Family family = Family::kPath;
  uint32_t n = 0;
  uint64_t m = 0;       // gnm only
  uint32_t rows = 0;    // grid_2d; if 0, derived from n (near-square)
  uint32_t cols = 0;
  uint32_t parts = 4;   // disjoint_union
  uint64_t seed = 0;    // gnm only
};

Graph generate(const GenSpec& spec);

}  // namespace mpcc
