#include <chrono>
#include <deque>

#include "swarmbmc/bmc.hpp"
#include "swarmbmc/frontend.hpp"

namespace swarmbmc {

namespace {

u64 ms_since(std::chrono::steady_clock::time_point t0) {
  return static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
}

// Feeds each havoc site the model values of its SSA nondets, in the order the
// unrolled copies occur. Execution order of a loop-free structured program is
// a subsequence of program order, so per-site queues line up exactly.
struct ModelTape : TapeSource {
  std::map<StmtId, std::deque<u64>> per_site;
  std::vector<u64> consumed;

  std::optional<u64> next(StmtId site) override {
    auto it = per_site.find(site);
    if (it == per_site.end() || it->second.empty()) return std::nullopt;
    u64 v = it->second.front();
    it->second.pop_front();
    consumed.push_back(v);
    return v;
  }
};

bool cancelled(const BmcOptions& opts) {
  return opts.cancel && opts.cancel->load(std::memory_order_relaxed);
}

}  // namespace

Counterexample decode_model(const Model& m, const EncodedInstance& e, const SsaProgram& s,
                            const Program& base, unsigned width, unsigned depth) {
  bool any_selector = false;
  for (const auto& [id, sel] : e.assert_selectors) {
    if (m.lit_true(sel)) {
      any_selector = true;
      break;
    }
  }
  if (!any_selector) throw DecodeError("model violates no assertion selector");

  ModelTape tape;
  for (std::size_t i = 0; i < s.nondets.size(); ++i) {
    u64 v = 0;
    const auto& bits = e.nondet_bits[i];
    for (std::size_t b = 0; b < bits.size(); ++b)
      if (m.lit_true(bits[b])) v |= 1ull << b;
    tape.per_site[s.nondets[i].origin].push_back(v);
  }

  Counterexample cex;
  cex.width = width;
  cex.depth_used = depth;
  cex.file = base.file;

  ExecOptions opts;
  opts.width = width;
  ExecutionOutcome out = execute(base, tape, opts, [&](const TraceEntry& t) {
    cex.trace.push_back(t);
  });
  if (out.kind != ExecutionOutcome::Kind::AssertionViolation)
    throw DecodeError("decoded tape does not reproduce a violation");

  cex.tape.values = std::move(tape.consumed);
  cex.violated_origin = out.stmt;
  cex.violated_loc = base.loc_of(out.stmt);
  cex.violated_step = out.step_index;
  return cex;
}

EncodedProgram encode_program(const Program& p, const BmcOptions& opts) {
  if (opts.depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (opts.width < 2 || opts.width > 64) throw WidthOutOfRangeError(opts.width);
  EncodedProgram out;
  Program flat = unroll(inline_calls(p), opts.depth);
  out.ssa = to_ssa(flat, opts.width, opts.required_flags, opts.depth);
  if (opts.slicing) out.ssa = slice(out.ssa);
  out.instance = encode(out.ssa, opts.width);
  return out;
}

VerificationOutcome check(const Program& p, const BmcOptions& opts) {
  VerificationOutcome out;
  auto t0 = std::chrono::steady_clock::now();

  if (cancelled(opts)) {
    out.kind = VerificationOutcome::Kind::ResourceOut;
    out.resource_reason = "cancelled";
    return out;
  }
  EncodedProgram enc = encode_program(p, opts);
  out.metrics.encode_ms = ms_since(t0);
  out.metrics.num_vars = enc.instance.stats.num_vars;
  out.metrics.num_clauses = enc.instance.stats.num_clauses;
  if (cancelled(opts)) {
    out.kind = VerificationOutcome::Kind::ResourceOut;
    out.resource_reason = "cancelled";
    return out;
  }

  auto t1 = std::chrono::steady_clock::now();
  SolveResult r = solve(enc.instance.cnf, opts.budget, opts.seed, opts.cancel);
  out.metrics.solve_ms = ms_since(t1);

  switch (r.status) {
    case SolveStatus::Sat: {
      out.kind = VerificationOutcome::Kind::Counterexample;
      out.cex = decode_model(r.model, enc.instance, enc.ssa, p, opts.width, opts.depth);
      break;
    }
    case SolveStatus::Unsat:
      out.kind = VerificationOutcome::Kind::VerifiedToDepth;
      out.depth = opts.depth;
      break;
    case SolveStatus::Unknown:
      out.kind = VerificationOutcome::Kind::ResourceOut;
      out.resource_reason = r.unknown_reason;
      break;
  }
  return out;
}

VerificationOutcome check(const VariantProgram& v, const BmcOptions& opts) {
  BmcOptions inner = opts;
  inner.required_flags = v.required_flags;
  VerificationOutcome out = check(v.program, inner);
  if (out.cex) {
    out.cex->omitted = v.omitted;
    out.cex->required = v.required;
  }
  return out;
}

}  // namespace swarmbmc
