#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmbmc/interp.hpp"
#include "swarmbmc/sat.hpp"
#include "swarmbmc/transform.hpp"

namespace swarmbmc {

struct BmcOptions {
  unsigned depth = 16;   // unwind bound k
  unsigned width = 8;    // bits per integer
  bool slicing = false;
  SolveBudget budget = SolveBudget::unlimited();
  u64 seed = 0;
  const std::atomic<bool>* cancel = nullptr;
  // Seen-flag variables whose current value gates every assertion; filled in
  // by the VariantProgram overload for feature-requirement runs.
  std::vector<std::string> required_flags;
};

struct Counterexample {
  NondetTape tape;
  StmtId violated_origin = 0;  // base-program statement id
  SourceLoc violated_loc;
  std::string file;
  u64 violated_step = 0;
  std::vector<TraceEntry> trace;
  unsigned depth_used = 0;
  unsigned width = 8;
  FeatureSet omitted;
  FeatureSet required;
};

struct BmcMetrics {
  u64 encode_ms = 0;
  u64 solve_ms = 0;
  int num_vars = 0;
  int num_clauses = 0;
};

struct VerificationOutcome {
  enum class Kind { Counterexample, VerifiedToDepth, ResourceOut };
  Kind kind = Kind::ResourceOut;
  std::optional<swarmbmc::Counterexample> cex;
  unsigned depth = 0;             // VerifiedToDepth bound
  std::string resource_reason;    // ResourceOut
  BmcMetrics metrics;
};

// Front half of the pipeline, reusable for DIMACS export and SSA dumps.
struct EncodedProgram {
  SsaProgram ssa;
  EncodedInstance instance;
};
EncodedProgram encode_program(const Program& p, const BmcOptions& opts);

/// Single-variant pipeline: inline, unroll, SSA, optional slice, encode,
/// solve, decode. The program is interpreted as-is (a baseline program with
/// log statements is fine; logs are inert for verification).
VerificationOutcome check(const Program& p, const BmcOptions& opts);

/// Variant-aware wrapper: threads required-feature flags into the encoding
/// and stamps the counterexample's configuration.
VerificationOutcome check(const VariantProgram& v, const BmcOptions& opts);

/// Reads the nondet tape off the model and reconstructs the trace by
/// re-interpreting `base` on it; throws DecodeError if no assert selector is
/// true under the model.
Counterexample decode_model(const Model& m, const EncodedInstance& e, const SsaProgram& s,
                            const Program& base, unsigned width, unsigned depth);

}  // namespace swarmbmc
