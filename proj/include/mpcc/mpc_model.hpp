#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace mpcc {

// Machine model: M machines with S = ceil(n0^delta) words each and total
// space T words. Every bulk primitive (sort, filter, prefix sum, predecessor,
// duplicate removal) costs ceil(1/delta) synchronous rounds regardless of
// input size, which is what charge_primitive books.
struct MpcConfig {
  double delta = 0.5;        // in (0,1)
  uint64_t n0 = 0;           // input size the machine count is sized for
  uint64_t total_space = 0;  // T, in words
  double space_factor = 4.0; // c: audits flag anything above c*T
  bool strict = false;       // promote audit violations to AuditError

  uint64_t words_per_machine() const {
    return static_cast<uint64_t>(std::ceil(std::pow(static_cast<double>(n0), delta)));
  }
  uint32_t rounds_per_primitive() const {
    return static_cast<uint32_t>(std::ceil(1.0 / delta));
  }
};

enum class Primitive : uint8_t {
  kSort = 0,
  kFilter,
  kPrefixSum,
  kPredecessor,
  kDedup,
  kCount_,
};

const char* primitive_name(Primitive p);

struct AuditViolation {
  std::string what;      // "y", "b2", or primitive name
  uint64_t iteration;    // engine iteration / phase round the value belongs to
  double value;
  double bound;
};

// Running account of rounds and space for one solver run. Violations are
// recorded, not fatal, unless the config is strict; acceptance runs require
// the list to come out empty.
struct CostLedger {
  uint64_t rounds = 0;
  uint64_t primitive_invocations[static_cast<size_t>(Primitive::kCount_)] = {};
  double peak_y = 0.0;        // max over iterations of |E_r| + sum of slack
  double peak_b2 = 0.0;       // max over iterations of sum of b(v)^2
  std::vector<AuditViolation> violations;

  uint64_t total_primitives() const {
    uint64_t t = 0;
    for (uint64_t c : primitive_invocations) t += c;
    return t;
  }

  void merge(const CostLedger& o);
  std::string to_json() const;
};

// Books one primitive invocation: rounds += ceil(1/delta). item_count is the
// number of words the primitive streams; counts above c*T are recorded as
// violations (the model ran out of its declared space).
void charge_primitive(CostLedger& ledger, const MpcConfig& config, Primitive p,
                      uint64_t item_count, uint64_t iteration);

// Books the end-of-iteration space audit. y = edge_count + remaining budget
// slack; both y and the budget square sum must stay within c*T.
void audit_iteration(CostLedger& ledger, const MpcConfig& config, uint64_t iteration,
                     uint64_t edge_count, double remaining_budget_sum,
                     double budget_square_sum);

}  // namespace mpcc
