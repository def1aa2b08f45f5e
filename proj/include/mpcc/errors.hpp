#pragma once

#include <stdexcept>
#include <string>

namespace mpcc {

// Bad generator parameters (negative sizes, odd two_cycles, m > max edges).
struct InvalidSpecError : std::runtime_error {
  explicit InvalidSpecError(const std::string& what) : std::runtime_error(what) {}
};

// Bad algorithm parameters (T below the edge count, nonsensical delta).
struct InvalidParamsError : std::runtime_error {
  explicit InvalidParamsError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-contract input graph (parse failure, not disjoint cycles).
struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// Main loop exceeded its iteration cap. The cap is generous; hitting it
// signals an implementation or parameter bug, not an unlucky seed.
struct TerminationOverflowError : std::runtime_error {
  explicit TerminationOverflowError(const std::string& what) : std::runtime_error(what) {}
};

// A contraction phase stopped making progress before reaching its target.
struct NoProgressError : std::runtime_error {
  explicit NoProgressError(const std::string& what) : std::runtime_error(what) {}
};

// Space audit violation escalated by strict mode.
struct AuditError : std::runtime_error {
  explicit AuditError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpcc
