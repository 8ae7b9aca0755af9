#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "swarmbmc/swarm.hpp"

namespace swarmbmc {

using Json = nlohmann::json;

// Reproducibility stamp embedded in every JSON report.
struct RunManifest {
  std::string command;
  Json options;
  std::string version;
  std::string input_digest;  // fnv1a64 of the input file bytes, hex

  Json to_json() const;
};

std::string digest_bytes(const std::string& bytes);

Json cex_to_json(const Counterexample& cex);
/// Parses the counterexample schema; throws DecodeError on shape mismatch.
Counterexample cex_from_json(const Json& j, unsigned width);

Json outcome_to_json(const VerificationOutcome& outcome);
Json swarm_report_to_json(const SwarmReport& report);

const char* status_text(VerificationOutcome::Kind kind);
std::string human_swarm_table(const SwarmReport& report);

}  // namespace swarmbmc
