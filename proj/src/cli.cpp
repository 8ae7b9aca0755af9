#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "swarmbmc/cli.hpp"
#include "swarmbmc/frontend.hpp"
#include "swarmbmc/report.hpp"
#include "swarmbmc/version.hpp"

namespace swarmbmc::cli {

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitFalsified = 10;
constexpr int kExitResourceOut = 20;
constexpr int kExitPartial = 30;
constexpr int kExitUsage = 2;
constexpr int kExitReplayFailed = 1;

struct UsageFailure {
  std::string message;
};

struct LoadedProgram {
  Program program;
  std::string bytes;
};

LoadedProgram load_program(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot open input file: " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedProgram loaded;
  loaded.bytes = buf.str();
  try {
    loaded.program = parse(loaded.bytes, path);
  } catch (const ParseError& e) {
    throw UsageFailure{path + ":" + std::to_string(e.line) + ":" + std::to_string(e.col) +
                       ": parse error: " + e.what()};
  }
  std::vector<SemanticError> errors = validate(loaded.program);
  if (!errors.empty()) {
    for (const auto& se : errors) {
      SourceLoc loc = loaded.program.loc_of(se.stmt);
      err << path << ":" << loc.line << ": error: " << se.message << "\n";
    }
    throw UsageFailure{path + ": semantic validation failed"};
  }
  return loaded;
}

u64 default_seed() {
  const char* env = std::getenv("SWARM_BMC_SEED");
  if (!env) return 0;
  return std::strtoull(env, nullptr, 10);
}

RunManifest make_manifest(const std::vector<std::string>& args, Json options,
                          const std::string& input_bytes) {
  RunManifest m;
  m.command = "swarm-bmc";
  for (const auto& a : args) m.command += " " + a;
  m.options = std::move(options);
  m.version = kVersion;
  m.input_digest = digest_bytes(input_bytes);
  return m;
}

int outcome_exit_code(const VerificationOutcome& outcome) {
  switch (outcome.kind) {
    case VerificationOutcome::Kind::Counterexample: return kExitFalsified;
    case VerificationOutcome::Kind::VerifiedToDepth: return kExitVerified;
    case VerificationOutcome::Kind::ResourceOut: return kExitResourceOut;
  }
  return kExitResourceOut;
}

int verdict_exit_code(const SwarmVerdict& verdict) {
  switch (verdict.kind) {
    case SwarmVerdict::Kind::Falsified: return kExitFalsified;
    case SwarmVerdict::Kind::VerifiedToDepth: return kExitVerified;
    case SwarmVerdict::Kind::PartiallyVerified: return kExitPartial;
    case SwarmVerdict::Kind::Inconclusive: return kExitResourceOut;
  }
  return kExitResourceOut;
}

SolveBudget budget_from(u64 max_conflicts, double max_seconds) {
  SolveBudget b;
  if (max_conflicts > 0) b.max_conflicts = max_conflicts;
  if (max_seconds >= 0) b.max_seconds = max_seconds;
  return b;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"swarm bounded model checker for the imp mini-language"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // --- features ---
  auto* cmd_features = app.add_subcommand("features", "list the program's log features");
  std::string features_file;
  cmd_features->add_option("file", features_file, "program (.imp)")->required();

  // --- check ---
  auto* cmd_check = app.add_subcommand("check", "bounded model check one variant");
  std::string check_file;
  unsigned depth = 16, width = 8;
  bool slice_flag = false, json_flag = false, stats_flag = false;
  std::vector<std::string> omit_labels, require_labels;
  std::string dimacs_path, emit_ssa_path;
  u64 max_conflicts = 0, seed = default_seed();
  double max_seconds = -1.0;
  cmd_check->add_option("file", check_file, "program (.imp)")->required();
  cmd_check->add_option("--depth", depth, "unwind bound k");
  cmd_check->add_option("--width", width, "integer bit width");
  cmd_check->add_flag("--slice", slice_flag, "slice before encoding");
  cmd_check->add_option("--omit", omit_labels, "features to omit")->delimiter(',');
  cmd_check->add_option("--require", require_labels, "features every trace must include")
      ->delimiter(',');
  cmd_check->add_option("--dimacs", dimacs_path, "write the encoded CNF here");
  cmd_check->add_option("--emit-ssa", emit_ssa_path, "write the SSA dump here ('-' = stdout)");
  cmd_check->add_flag("--stats", stats_flag, "print vars/clauses/sliced line");
  cmd_check->add_flag("--json", json_flag, "machine-readable report");
  cmd_check->add_option("--max-conflicts", max_conflicts, "solver conflict budget");
  cmd_check->add_option("--max-seconds", max_seconds, "solver wall-clock budget");
  cmd_check->add_option("--seed", seed, "solver seed");

  // --- swarm ---
  auto* cmd_swarm = app.add_subcommand("swarm", "run a feature-omission swarm");
  std::string swarm_file, strategy = "leave-one-out";
  unsigned configs_count = 8, jobs = 1;
  bool keep_going = false, swarm_json = false, swarm_slice = false;
  unsigned swarm_depth = 16, swarm_width = 8;
  u64 swarm_seed = default_seed(), swarm_conflicts = 0;
  double swarm_seconds = -1.0;
  cmd_swarm->add_option("file", swarm_file, "program (.imp)")->required();
  cmd_swarm->add_option("--depth", swarm_depth, "unwind bound k");
  cmd_swarm->add_option("--width", swarm_width, "integer bit width");
  cmd_swarm->add_option("--strategy", strategy, "leave-one-out | half")
      ->check(CLI::IsMember({"leave-one-out", "half"}));
  cmd_swarm->add_option("--configs", configs_count, "config count for half strategy");
  cmd_swarm->add_option("--seed", swarm_seed, "sampling and solver seed");
  cmd_swarm->add_option("--jobs", jobs, "parallel workers");
  cmd_swarm->add_flag("--slice", swarm_slice, "slice before encoding");
  cmd_swarm->add_flag("--keep-going", keep_going, "run every config to completion");
  cmd_swarm->add_flag("--json", swarm_json, "machine-readable report");
  cmd_swarm->add_option("--max-conflicts", swarm_conflicts, "per-run conflict budget");
  cmd_swarm->add_option("--max-seconds", swarm_seconds, "per-run wall-clock budget");

  // --- replay ---
  auto* cmd_replay = app.add_subcommand("replay", "replay a counterexample trace");
  std::string replay_file, trace_path;
  unsigned replay_width = 8;
  cmd_replay->add_option("file", replay_file, "program (.imp)")->required();
  cmd_replay->add_option("--trace", trace_path, "counterexample JSON")->required();
  cmd_replay->add_option("--width", replay_width, "bit width the trace was produced at");

  // --- solve ---
  auto* cmd_solve = app.add_subcommand("solve", "solve DIMACS CNF from stdin");
  std::string dimacs_in;
  u64 solve_conflicts = 0;
  double solve_seconds = -1.0;
  cmd_solve->add_option("--dimacs-in", dimacs_in, "read CNF from a file instead of stdin");
  cmd_solve->add_option("--max-conflicts", solve_conflicts, "conflict budget");
  cmd_solve->add_option("--max-seconds", solve_seconds, "wall-clock budget");

  std::vector<const char*> argv;
  argv.push_back("swarm-bmc");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitVerified;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cmd_features->parsed()) {
      LoadedProgram loaded = load_program(features_file, err);
      for (const auto& label : extract_features(loaded.program).labels) out << label << "\n";
      return kExitVerified;
    }

    if (cmd_check->parsed()) {
      LoadedProgram loaded = load_program(check_file, err);
      VariantProgram variant;
      try {
        variant = make_variant(loaded.program, FeatureSet::of(omit_labels),
                               FeatureSet::of(require_labels));
      } catch (const std::invalid_argument& e) {
        throw UsageFailure{e.what()};
      }
      BmcOptions opts;
      opts.depth = depth;
      opts.width = width;
      opts.slicing = slice_flag;
      opts.seed = seed;
      opts.budget = budget_from(max_conflicts, max_seconds);
      opts.required_flags = variant.required_flags;

      if (!dimacs_path.empty() || !emit_ssa_path.empty() || stats_flag) {
        EncodedProgram enc = encode_program(variant.program, opts);
        if (!emit_ssa_path.empty()) {
          if (emit_ssa_path == "-") {
            out << dump_ssa(enc.ssa);
          } else {
            std::ofstream ssa_out(emit_ssa_path);
            if (!ssa_out) throw UsageFailure{"cannot write " + emit_ssa_path};
            ssa_out << dump_ssa(enc.ssa);
          }
        }
        if (!dimacs_path.empty()) {
          std::ofstream cnf_out(dimacs_path);
          if (!cnf_out) throw UsageFailure{"cannot write " + dimacs_path};
          export_dimacs(enc.instance, enc.ssa, variant.program, cnf_out);
        }
        if (stats_flag) {
          out << "vars=" << enc.instance.stats.num_vars
              << " clauses=" << enc.instance.stats.num_clauses
              << " sliced=" << (enc.instance.stats.sliced ? "true" : "false") << "\n";
        }
      }

      VerificationOutcome outcome = check(variant, opts);
      if (outcome.cex) {
        // Report only replay-validated counterexamples.
        if (!replay(variant.program, *outcome.cex) || !replay(loaded.program, *outcome.cex)) {
          err << "internal error: counterexample failed replay validation\n";
          return kExitResourceOut;
        }
      }
      if (json_flag) {
        Json j = outcome_to_json(outcome);
        j["manifest"] = make_manifest(args,
                                      Json{{"depth", depth},
                                           {"width", width},
                                           {"slice", slice_flag},
                                           {"omit", omit_labels},
                                           {"require", require_labels},
                                           {"seed", seed}},
                                      loaded.bytes)
                            .to_json();
        out << j.dump(2) << "\n";
      } else {
        switch (outcome.kind) {
          case VerificationOutcome::Kind::Counterexample: {
            const Counterexample& cex = *outcome.cex;
            out << "counterexample: " << cex.file << ":" << cex.violated_loc.line
                << " after " << cex.violated_step << " steps, tape length "
                << cex.tape.values.size() << "\n";
            break;
          }
          case VerificationOutcome::Kind::VerifiedToDepth:
            out << "verified to depth " << outcome.depth << "\n";
            break;
          case VerificationOutcome::Kind::ResourceOut:
            out << "resource out: " << outcome.resource_reason << "\n";
            break;
        }
      }
      return outcome_exit_code(outcome);
    }

    if (cmd_swarm->parsed()) {
      LoadedProgram loaded = load_program(swarm_file, err);
      SwarmOptions opts;
      opts.strategy = strategy == "half" ? SampleStrategy::IndependentHalf
                                         : SampleStrategy::LeaveOneOut;
      opts.config_count = configs_count;
      opts.seed = swarm_seed;
      opts.jobs = jobs;
      opts.keep_going = keep_going;
      opts.per_run.depth = swarm_depth;
      opts.per_run.width = swarm_width;
      opts.per_run.slicing = swarm_slice;
      opts.per_run.budget = budget_from(swarm_conflicts, swarm_seconds);

      SwarmReport report = run_swarm(loaded.program, opts);
      if (swarm_json) {
        Json j = swarm_report_to_json(report);
        j["manifest"] = make_manifest(args,
                                      Json{{"depth", swarm_depth},
                                           {"width", swarm_width},
                                           {"strategy", strategy},
                                           {"configs", configs_count},
                                           {"seed", swarm_seed},
                                           {"jobs", jobs},
                                           {"slice", swarm_slice},
                                           {"keep_going", keep_going}},
                                      loaded.bytes)
                            .to_json();
        out << j.dump(2) << "\n";
      } else {
        out << human_swarm_table(report);
      }
      return verdict_exit_code(report.verdict);
    }

    if (cmd_replay->parsed()) {
      LoadedProgram loaded = load_program(replay_file, err);
      std::ifstream trace_in(trace_path);
      if (!trace_in) throw UsageFailure{"cannot open trace file: " + trace_path};
      Json j;
      try {
        trace_in >> j;
      } catch (const Json::exception& e) {
        throw UsageFailure{std::string("trace is not valid JSON: ") + e.what()};
      }
      Counterexample cex;
      try {
        cex = cex_from_json(j.contains("counterexample") && j["counterexample"].is_object()
                                ? j["counterexample"]
                                : j,
                            replay_width);
      } catch (const DecodeError& e) {
        throw UsageFailure{e.what()};
      }
      bool confirmed = replay(loaded.program, cex);
      out << (confirmed ? "confirmed" : "not confirmed") << "\n";
      return confirmed ? kExitVerified : kExitReplayFailed;
    }

    if (cmd_solve->parsed()) {
      CnfFormula f;
      try {
        if (!dimacs_in.empty()) {
          std::ifstream cnf_in(dimacs_in);
          if (!cnf_in) throw UsageFailure{"cannot open " + dimacs_in};
          f = parse_dimacs(cnf_in);
        } else {
          f = parse_dimacs(in);
        }
      } catch (const DimacsError& e) {
        throw UsageFailure{std::string("malformed DIMACS: ") + e.what()};
      }
      SolveResult r = solve(f, budget_from(solve_conflicts, solve_seconds));
      switch (r.status) {
        case SolveStatus::Sat: {
          out << "SAT\n";
          out << "v";
          for (int v = 1; v <= f.num_vars; ++v) out << " " << (r.model.var_true(v) ? v : -v);
          out << " 0\n";
          return kExitFalsified;
        }
        case SolveStatus::Unsat:
          out << "UNSAT\n";
          return kExitVerified;
        case SolveStatus::Unknown:
          out << "UNKNOWN " << r.unknown_reason << "\n";
          return kExitResourceOut;
      }
    }
  } catch (const UsageFailure& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const UnknownFeatureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace swarmbmc::cli
