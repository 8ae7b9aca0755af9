#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"
#include "swarmbmc/errors.hpp"

namespace swarmbmc {

// Values consumed by successive havoc() executions, already width-wrapped.
struct NondetTape {
  std::vector<u64> values;
};

struct ExecutionOutcome {
  enum class Kind {
    Completed,
    AssertionViolation,
    AssumeBlocked,
    TapeExhausted,
    StepLimit,
  };
  Kind kind = Kind::Completed;
  StmtId stmt = 0;        // origin id of the violating/blocking statement
  u64 step_index = 0;     // steps executed when the violation fired
  std::vector<std::string> log;
  u64 steps = 0;
};

struct ExecOptions {
  unsigned width = 8;
  u64 step_limit = 1'000'000;
  // When set, a loop that would start iteration bound+1 blocks the execution,
  // mirroring the unwinding assumption of the unrolled program.
  std::optional<unsigned> loop_bound;
};

// Supplies one value per dynamic havoc execution. `site` is the origin id of
// the havoc statement; the linear tape ignores it, model-backed sources use it.
struct TapeSource {
  virtual ~TapeSource() = default;
  virtual std::optional<u64> next(StmtId site) = 0;
};

struct TraceEntry {
  StmtId stmt = 0;
  int line = 0;
  std::map<std::string, i64> vars;  // scalars in scope, signed view
};
using TraceSink = std::function<void(const TraceEntry&)>;

ExecutionOutcome execute(const Program& p, TapeSource& tape, const ExecOptions& opts,
                         const TraceSink& sink = nullptr);
ExecutionOutcome execute(const Program& p, const NondetTape& tape, const ExecOptions& opts,
                         const TraceSink& sink = nullptr);

struct Counterexample;  // bmc.hpp

/// True iff executing `base` on the counterexample's tape reproduces an
/// assertion violation at the statement the counterexample names.
bool replay(const Program& base, const Counterexample& cex);

struct OracleVerdict {
  bool fails = false;
  NondetTape first_failing;  // lexicographically first, when fails
};

/// Exhaustive tape enumeration bounded by k loop iterations. The domain
/// defaults to all 2^width values; passing per_site restricts each syntactic
/// havoc site (in program order) to its own value list.
OracleVerdict enumerate(const Program& p, unsigned k, unsigned width,
                        const std::vector<u64>* domain = nullptr);
OracleVerdict enumerate_per_site(const Program& p, unsigned k, unsigned width,
                                 const std::vector<std::vector<u64>>& per_site);

/// Visit every minimal tape (DFS, lexicographic). Return false to stop early.
using TapeVisitor = std::function<bool(const NondetTape&, const ExecutionOutcome&)>;
void for_each_tape(const Program& p, unsigned k, unsigned width,
                   const std::vector<std::vector<u64>>& per_site, const TapeVisitor& visit);

/// Number of syntactic havoc sites in program order (helper for per-site domains).
std::vector<StmtId> havoc_sites(const Program& p);

// Width-wrapped two's complement arithmetic shared by the interpreter and the
// SSA constant folder. Division by zero reports through *div_by_zero instead
// of producing a value.
u64 eval_binop(BinOp op, u64 a, u64 b, unsigned width, bool* div_by_zero);
u64 eval_unop(UnOp op, u64 a, unsigned width);

}  // namespace swarmbmc
