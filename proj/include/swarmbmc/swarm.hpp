#pragma once

#include <span>
#include <string>
#include <vector>

#include "swarmbmc/bmc.hpp"

namespace swarmbmc {

struct SwarmConfig {
  FeatureSet omitted;
  std::string label;  // sorted omitted labels joined by "+", "baseline" if none

  static SwarmConfig of(FeatureSet omitted);
};

enum class SampleStrategy { LeaveOneOut, IndependentHalf, Explicit };

struct SwarmOptions {
  SampleStrategy strategy = SampleStrategy::LeaveOneOut;
  std::vector<FeatureSet> explicit_configs;  // Explicit strategy
  unsigned config_count = 8;                 // IndependentHalf
  u64 seed = 0;
  unsigned jobs = 1;
  BmcOptions per_run;
  bool keep_going = false;  // collect all results vs stop at first validated cex
  bool include_baseline = true;
};

struct ConfigResult {
  SwarmConfig config;
  VerificationOutcome outcome;
  bool replay_ok = false;  // counterexample validated against base and variant
};

struct SwarmVerdict {
  enum class Kind { Falsified, VerifiedToDepth, PartiallyVerified, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int falsified_index = -1;  // into per_config, earliest-completing validated cex
  unsigned depth = 0;
  std::vector<std::string> verified_labels;
};

struct SwarmReport {
  std::vector<ConfigResult> per_config;
  SwarmVerdict verdict;
  u64 wall_time_ms = 0;
  u64 seed = 0;
};

/// Deterministic configuration sampling. LeaveOneOut emits one config per
/// feature; IndependentHalf omits each feature with probability 1/2,
/// config_count times, duplicates removed. The baseline (empty omission) is
/// prepended when include_baseline is set.
std::vector<SwarmConfig> sample_configs(const FeatureSet& features, const SwarmOptions& opts);

/// Run variant BMC over the sampled configs on up to `jobs` workers that
/// share nothing. Counterexamples are replay-validated against the base
/// program before they can decide the verdict; with keep_going unset the
/// first validated counterexample cancels the remaining workers.
SwarmReport run_swarm(const Program& p, const SwarmOptions& opts);

SwarmVerdict aggregate(std::span<const ConfigResult> results, bool baseline_ran);

}  // namespace swarmbmc
