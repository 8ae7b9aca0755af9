#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>
#include <sstream>

#include "swarmbmc/cli.hpp"
#include "swarmbmc/frontend.hpp"
#include "swarmbmc/report.hpp"
#include "swarmbmc/version.hpp"

namespace py = pybind11;
using namespace swarmbmc;

namespace {

struct PyProgram {
  Program program;
};

PyProgram py_parse(const std::string& source, const std::string& filename) {
  return PyProgram{parse(source, filename)};
}

std::vector<std::string> py_validate(const PyProgram& p) {
  std::vector<std::string> out;
  for (const auto& e : validate(p.program)) out.push_back(e.message);
  return out;
}

BmcOptions make_opts(unsigned depth, unsigned width, bool slicing, u64 seed,
                     std::optional<u64> max_conflicts, std::optional<double> max_seconds) {
  BmcOptions opts;
  opts.depth = depth;
  opts.width = width;
  opts.slicing = slicing;
  opts.seed = seed;
  opts.budget.max_conflicts = max_conflicts;
  opts.budget.max_seconds = max_seconds;
  return opts;
}

std::string py_check(const PyProgram& p, unsigned depth, unsigned width, bool slicing,
                     const std::vector<std::string>& omit,
                     const std::vector<std::string>& require, u64 seed,
                     std::optional<u64> max_conflicts, std::optional<double> max_seconds) {
  VariantProgram variant =
      make_variant(p.program, FeatureSet::of(omit), FeatureSet::of(require));
  VerificationOutcome outcome =
      check(variant, make_opts(depth, width, slicing, seed, max_conflicts, max_seconds));
  if (outcome.cex &&
      (!replay(variant.program, *outcome.cex) || !replay(p.program, *outcome.cex)))
    throw std::runtime_error("counterexample failed replay validation");
  return outcome_to_json(outcome).dump();
}

std::string py_swarm(const PyProgram& p, unsigned depth, unsigned width, bool slicing,
                     const std::string& strategy, unsigned configs, u64 seed, unsigned jobs,
                     bool keep_going) {
  SwarmOptions opts;
  if (strategy == "half")
    opts.strategy = SampleStrategy::IndependentHalf;
  else if (strategy == "leave-one-out")
    opts.strategy = SampleStrategy::LeaveOneOut;
  else
    throw std::invalid_argument("strategy must be 'leave-one-out' or 'half'");
  opts.config_count = configs;
  opts.seed = seed;
  opts.jobs = jobs;
  opts.keep_going = keep_going;
  opts.per_run.depth = depth;
  opts.per_run.width = width;
  opts.per_run.slicing = slicing;
  return swarm_report_to_json(run_swarm(p.program, opts)).dump();
}

bool py_replay(const PyProgram& p, const std::string& cex_json, unsigned width) {
  Json j = Json::parse(cex_json);
  return replay(p.program, cex_from_json(j, width));
}

py::dict py_enumerate(const PyProgram& p, unsigned depth, unsigned width,
                      const std::vector<std::vector<u64>>& domains) {
  OracleVerdict v = enumerate_per_site(p.program, depth, width, domains);
  py::dict out;
  out["fails"] = v.fails;
  py::list tape;
  for (u64 x : v.first_failing.values) tape.append(as_signed(x, width));
  out["tape"] = tape;
  return out;
}

py::dict py_execute(const PyProgram& p, const std::vector<i64>& tape, unsigned width,
                    u64 step_limit) {
  NondetTape t;
  for (i64 v : tape) t.values.push_back(from_signed(v, width));
  ExecOptions opts;
  opts.width = width;
  opts.step_limit = step_limit;
  ExecutionOutcome out = execute(p.program, t, opts);
  py::dict d;
  switch (out.kind) {
    case ExecutionOutcome::Kind::Completed: d["kind"] = "completed"; break;
    case ExecutionOutcome::Kind::AssertionViolation: d["kind"] = "assertion_violation"; break;
    case ExecutionOutcome::Kind::AssumeBlocked: d["kind"] = "assume_blocked"; break;
    case ExecutionOutcome::Kind::TapeExhausted: d["kind"] = "tape_exhausted"; break;
    case ExecutionOutcome::Kind::StepLimit: d["kind"] = "step_limit"; break;
  }
  d["line"] = p.program.loc_of(out.stmt).line;
  d["steps"] = out.steps;
  d["log"] = out.log;
  return d;
}

py::dict py_solve_dimacs(const std::string& text, std::optional<u64> max_conflicts) {
  std::istringstream is(text);
  CnfFormula f = parse_dimacs(is);
  SolveBudget budget;
  budget.max_conflicts = max_conflicts;
  SolveResult r = solve(f, budget);
  py::dict out;
  if (r.status == SolveStatus::Sat) {
    out["status"] = "sat";
    py::list model;
    for (int v = 1; v <= f.num_vars; ++v) model.append(r.model.var_true(v) ? v : -v);
    out["model"] = model;
  } else if (r.status == SolveStatus::Unsat) {
    out["status"] = "unsat";
  } else {
    out["status"] = "unknown";
    out["reason"] = r.unknown_reason;
  }
  return out;
}

std::string py_encode_dimacs(const PyProgram& p, unsigned depth, unsigned width, bool slicing,
                             const std::vector<std::string>& omit) {
  VariantProgram variant = make_variant(p.program, FeatureSet::of(omit), FeatureSet{});
  BmcOptions opts = make_opts(depth, width, slicing, 0, std::nullopt, std::nullopt);
  EncodedProgram enc = encode_program(variant.program, opts);
  std::ostringstream os;
  export_dimacs(enc.instance, enc.ssa, variant.program, os);
  return os.str();
}

int py_cli(const std::vector<std::string>& args) {
  int code = cli::run(args, std::cin, std::cout, std::cerr);
  std::cout.flush();
  std::cerr.flush();
  return code;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "swarm bounded model checker core";
  m.attr("__version__") = kVersion;

  py::class_<PyProgram>(m, "Program")
      .def_property_readonly("file", [](const PyProgram& p) { return p.program.file; })
      .def("features",
           [](const PyProgram& p) { return extract_features(p.program).labels; })
      .def("validate", &py_validate)
      .def("pretty", [](const PyProgram& p) { return pretty(p.program); });

  m.def("parse", &py_parse, py::arg("source"), py::arg("filename") = "<python>");
  m.def("check", &py_check, py::arg("program"), py::arg("depth") = 16, py::arg("width") = 8,
        py::arg("slicing") = false, py::arg("omit") = std::vector<std::string>{},
        py::arg("require") = std::vector<std::string>{}, py::arg("seed") = 0,
        py::arg("max_conflicts") = std::nullopt, py::arg("max_seconds") = std::nullopt,
        "Run the single-variant pipeline; returns the outcome report as JSON text.");
  m.def("swarm", &py_swarm, py::arg("program"), py::arg("depth") = 16, py::arg("width") = 8,
        py::arg("slicing") = false, py::arg("strategy") = "leave-one-out",
        py::arg("configs") = 8, py::arg("seed") = 0, py::arg("jobs") = 1,
        py::arg("keep_going") = true,
        "Run a feature-omission swarm; returns the report as JSON text.");
  m.def("replay", &py_replay, py::arg("program"), py::arg("cex_json"), py::arg("width") = 8);
  m.def("enumerate_tapes", &py_enumerate, py::arg("program"), py::arg("depth"),
        py::arg("width"), py::arg("domains") = std::vector<std::vector<u64>>{});
  m.def("execute", &py_execute, py::arg("program"), py::arg("tape"), py::arg("width") = 8,
        py::arg("step_limit") = 1000000);
  m.def("solve_dimacs", &py_solve_dimacs, py::arg("text"),
        py::arg("max_conflicts") = std::nullopt);
  m.def("encode_dimacs", &py_encode_dimacs, py::arg("program"), py::arg("depth") = 16,
        py::arg("width") = 8, py::arg("slicing") = false,
        py::arg("omit") = std::vector<std::string>{});
  m.def("cli", &py_cli, py::arg("args"), "Invoke the command-line interface in-process.");

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<UnknownFeatureError>(m, "UnknownFeatureError");
}
