#include <iomanip>
#include <sstream>

#include "swarmbmc/report.hpp"
#include "swarmbmc/version.hpp"

namespace swarmbmc {

std::string digest_bytes(const std::string& bytes) {
  return to_hex(fnv1a64(bytes));
}

Json RunManifest::to_json() const {
  return Json{{"command", command},
              {"options", options},
              {"version", version.empty() ? kVersion : version},
              {"input_digest", input_digest}};
}

Json cex_to_json(const Counterexample& cex) {
  Json tape = Json::array();
  for (u64 v : cex.tape.values) tape.push_back(as_signed(v, cex.width));

  Json trace = Json::array();
  for (const auto& entry : cex.trace) {
    Json vars = Json::object();
    for (const auto& [name, value] : entry.vars) vars[name] = value;
    trace.push_back(Json{{"line", entry.line}, {"vars", vars}});
  }

  return Json{
      {"config", Json{{"omitted", cex.omitted.labels}, {"required", cex.required.labels}}},
      {"depth", cex.depth_used},
      {"tape", tape},
      {"violated_assert", Json{{"file", cex.file}, {"line", cex.violated_loc.line}}},
      {"trace", trace},
  };
}

Counterexample cex_from_json(const Json& j, unsigned width) {
  try {
    Counterexample cex;
    cex.width = width;
    for (const auto& v : j.at("tape"))
      cex.tape.values.push_back(from_signed(v.get<i64>(), width));
    cex.depth_used = j.at("depth").get<unsigned>();
    cex.file = j.at("violated_assert").at("file").get<std::string>();
    cex.violated_loc.line = j.at("violated_assert").at("line").get<int>();
    std::vector<std::string> omitted, required;
    for (const auto& l : j.at("config").at("omitted")) omitted.push_back(l.get<std::string>());
    for (const auto& l : j.at("config").at("required")) required.push_back(l.get<std::string>());
    cex.omitted = FeatureSet::of(std::move(omitted));
    cex.required = FeatureSet::of(std::move(required));
    return cex;
  } catch (const Json::exception& e) {
    throw DecodeError(std::string("counterexample schema mismatch: ") + e.what());
  }
}

const char* status_text(VerificationOutcome::Kind kind) {
  switch (kind) {
    case VerificationOutcome::Kind::Counterexample: return "counterexample";
    case VerificationOutcome::Kind::VerifiedToDepth: return "verified";
    case VerificationOutcome::Kind::ResourceOut: return "resource_out";
  }
  return "?";
}

Json outcome_to_json(const VerificationOutcome& outcome) {
  Json j{
      {"status", status_text(outcome.kind)},
      {"metrics",
       Json{{"encode_ms", outcome.metrics.encode_ms},
            {"solve_ms", outcome.metrics.solve_ms},
            {"vars", outcome.metrics.num_vars},
            {"clauses", outcome.metrics.num_clauses}}},
      {"counterexample", outcome.cex ? cex_to_json(*outcome.cex) : Json(nullptr)},
  };
  if (outcome.kind == VerificationOutcome::Kind::VerifiedToDepth) j["depth"] = outcome.depth;
  if (outcome.kind == VerificationOutcome::Kind::ResourceOut)
    j["reason"] = outcome.resource_reason;
  return j;
}

Json swarm_report_to_json(const SwarmReport& report) {
  Json configs = Json::array();
  for (const auto& r : report.per_config) {
    configs.push_back(Json{
        {"omitted", r.config.omitted.labels},
        {"status", status_text(r.outcome.kind)},
        {"metrics",
         Json{{"vars", r.outcome.metrics.num_vars},
              {"clauses", r.outcome.metrics.num_clauses},
              {"solve_ms", r.outcome.metrics.solve_ms}}},
        {"counterexample", r.outcome.cex ? cex_to_json(*r.outcome.cex) : Json(nullptr)},
    });
  }

  Json verdict;
  switch (report.verdict.kind) {
    case SwarmVerdict::Kind::Falsified:
      verdict = Json{{"kind", "falsified"}};
      if (report.verdict.falsified_index >= 0)
        verdict["config"] =
            report.per_config[static_cast<std::size_t>(report.verdict.falsified_index)]
                .config.label;
      break;
    case SwarmVerdict::Kind::VerifiedToDepth:
      verdict = Json{{"kind", "verified_to_depth"}, {"depth", report.verdict.depth}};
      break;
    case SwarmVerdict::Kind::PartiallyVerified:
      verdict = Json{{"kind", "partially_verified"}, {"configs", report.verdict.verified_labels}};
      break;
    case SwarmVerdict::Kind::Inconclusive:
      verdict = Json{{"kind", "inconclusive"}};
      break;
  }

  return Json{{"seed", report.seed},
              {"verdict", verdict},
              {"configs", configs},
              {"wall_time_ms", report.wall_time_ms}};
}

std::string human_swarm_table(const SwarmReport& report) {
  auto status_cell = [](const ConfigResult& r) -> std::string {
    switch (r.outcome.kind) {
      case VerificationOutcome::Kind::Counterexample: return "Counterexample";
      case VerificationOutcome::Kind::VerifiedToDepth: return "Verified";
      case VerificationOutcome::Kind::ResourceOut:
        return "ResourceOut(" + r.outcome.resource_reason + ")";
    }
    return "?";
  };

  std::size_t name_w = std::string("Omitted Feature").size();
  std::size_t status_w = std::string("Status").size();
  for (const auto& r : report.per_config) {
    std::string name = r.config.omitted.empty() ? "none" : r.config.label;
    name_w = std::max(name_w, name.size());
    status_w = std::max(status_w, status_cell(r).size());
  }

  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_w) + 2) << "Omitted Feature"
     << std::setw(static_cast<int>(status_w) + 2) << "Status" << std::setw(10) << "vars"
     << std::setw(10) << "clauses" << "solve ms\n";
  for (const auto& r : report.per_config) {
    std::string name = r.config.omitted.empty() ? "none" : r.config.label;
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << name
       << std::setw(static_cast<int>(status_w) + 2) << status_cell(r) << std::setw(10)
       << r.outcome.metrics.num_vars << std::setw(10) << r.outcome.metrics.num_clauses
       << r.outcome.metrics.solve_ms << "\n";
  }
  return os.str();
}

}  // namespace swarmbmc
