#pragma once

#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"
#include "swarmbmc/errors.hpp"

namespace swarmbmc {

// A feature-restricted rewrite of a base program. `program` contains no Log
// statements: omitted labels became blocking assumptions, required labels
// became seen-flag updates, everything else was deleted.
struct VariantProgram {
  Program base;
  FeatureSet omitted;
  FeatureSet required;
  std::vector<std::string> required_flags;  // flag variable per required label
  Program program;

  std::string label() const;  // sorted omitted labels joined by "+", or "baseline"
};

/// Build the variant for a swarm configuration. Throws UnknownFeatureError if
/// a label does not occur in the program, std::invalid_argument on overlap.
VariantProgram make_variant(const Program& p, FeatureSet omitted, FeatureSet required);

VariantProgram omit_features(const Program& p, FeatureSet omitted);
VariantProgram require_features(const Program& p, FeatureSet required);

/// Expand every call in the entry function; the result's entry body contains
/// no Call or Return statements. Other functions are kept untouched.
Program inline_calls(const Program& p);

/// Replace every loop by k guarded body copies followed by the unwinding
/// assumption assume(!cond). Requires an inlined program.
Program unroll(const Program& p, unsigned k);

}  // namespace swarmbmc
