#include "mpcc/mpc_model.hpp"

#include <algorithm>

#include "json.hpp"
#include "mpcc/errors.hpp"

namespace mpcc {

const char* primitive_name(Primitive p) {
  switch (p) {
    case Primitive::kSort: return "sort";
    case Primitive::kFilter: return "filter";
    case Primitive::kPrefixSum: return "prefix_sum";
    case Primitive::kPredecessor: return "predecessor";
    case Primitive::kDedup: return "dedup";
    default: return "?";
  }
}

void CostLedger::merge(const CostLedger& o) {
  rounds += o.rounds;
  for (size_t i = 0; i < static_cast<size_t>(Primitive::kCount_); ++i)
    primitive_invocations[i] += o.primitive_invocations[i];
  peak_y = std::max(peak_y, o.peak_y);
  peak_b2 = std::max(peak_b2, o.peak_b2);
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
}

std::string CostLedger::to_json() const {
  nlohmann::ordered_json j;
  j["rounds"] = rounds;
  nlohmann::ordered_json prims;
  for (size_t i = 0; i < static_cast<size_t>(Primitive::kCount_); ++i)
    prims[primitive_name(static_cast<Primitive>(i))] = primitive_invocations[i];
  j["primitives"] = prims;
  j["peak_y"] = peak_y;
  j["peak_b2"] = peak_b2;
  nlohmann::ordered_json viol = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    viol.push_back({{"what", v.what},
                    {"iteration", v.iteration},
                    {"value", v.value},
                    {"bound", v.bound}});
  }
  j["violations"] = viol;
  return j.dump(2);
}

namespace {

void record_violation(CostLedger& ledger, const MpcConfig& config, const char* what,
                      uint64_t iteration, double value, double bound) {
  ledger.violations.push_back({what, iteration, value, bound});
  if (config.strict)
    throw AuditError(std::string("space audit: ") + what + " = " + std::to_string(value) +
                     " exceeds " + std::to_string(bound) + " at iteration " +
                     std::to_string(iteration));
}

}  // namespace

void charge_primitive(CostLedger& ledger, const MpcConfig& config, Primitive p,
                      uint64_t item_count, uint64_t iteration) {
  ledger.rounds += config.rounds_per_primitive();
  ledger.primitive_invocations[static_cast<size_t>(p)] += 1;
  double bound = config.space_factor * static_cast<double>(config.total_space);
  if (static_cast<double>(item_count) > bound)
    record_violation(ledger, config, primitive_name(p), iteration,
                     static_cast<double>(item_count), bound);
}

void audit_iteration(CostLedger& ledger, const MpcConfig& config, uint64_t iteration,
                     uint64_t edge_count, double remaining_budget_sum,
                     double budget_square_sum) {
  double y = static_cast<double>(edge_count) + remaining_budget_sum;
  double bound = config.space_factor * static_cast<double>(config.total_space);
  ledger.peak_y = std::max(ledger.peak_y, y);
  ledger.peak_b2 = std::max(ledger.peak_b2, budget_square_sum);
  if (y > bound) record_violation(ledger, config, "y", iteration, y, bound);
  if (budget_square_sum > bound)
    record_violation(ledger, config, "b2", iteration, budget_square_sum, bound);
}

}  // namespace mpcc
