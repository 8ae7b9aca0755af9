#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "swarmbmc/encode.hpp"

namespace swarmbmc {

struct SolveBudget {
  std::optional<u64> max_conflicts;
  std::optional<double> max_seconds;
  static SolveBudget unlimited() { return {}; }
};

// Total assignment over the formula's variables (index 1..num_vars).
struct Model {
  std::vector<bool> values;  // values[var], values[0] unused
  bool var_true(int var) const { return values[static_cast<std::size_t>(var)]; }
  bool lit_true(int lit) const {
    return lit > 0 ? var_true(lit) : !var_true(-lit);
  }
};

enum class SolveStatus { Sat, Unsat, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  Model model;                 // meaningful for Sat
  std::string unknown_reason;  // "conflicts", "time", "cancelled"
  u64 conflicts = 0;
  u64 decisions = 0;
  u64 propagations = 0;
};

/// CDCL: two-watched literals, first-UIP learning with basic clause
/// minimization, VSIDS decisions with phase saving, Luby restarts, activity
/// based learnt-clause reduction. Deterministic for a fixed seed.
SolveResult solve(const CnfFormula& f, const SolveBudget& budget, u64 seed = 0,
                  const std::atomic<bool>* cancel = nullptr);

/// True iff every clause has a satisfied literal under m.
bool check_model(const CnfFormula& f, const Model& m);

}  // namespace swarmbmc
