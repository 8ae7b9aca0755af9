#pragma once

#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"

namespace swarmbmc {

// Single-op equations over references to earlier definitions. Every value is
// one machine word; comparison and boolean ops produce 0/1.
enum class SsaOp {
  Const,   // a
  Copy,    // a
  Add, Sub, Mul, Div, Rem,  // a op b, signed wrap semantics
  Neg,     // -a
  Lt, Le,  // signed compare
  Eq,
  Nz,      // a != 0
  BNot,    // a == 0 (operands 0/1 in practice, safe for any value)
  BAnd, BOr,
  Select,  // a ? b : c
};

struct SsaOperand {
  enum class Kind { Const, Ref, Nondet } kind = Kind::Const;
  u32 index = 0;
  u64 cval = 0;

  static SsaOperand constant(u64 v) { return {Kind::Const, 0, v}; }
  static SsaOperand ref(u32 idx) { return {Kind::Ref, idx, 0}; }
  static SsaOperand nondet(u32 idx) { return {Kind::Nondet, idx, 0}; }
  bool is_const() const { return kind == Kind::Const; }
  bool is_ref() const { return kind == Kind::Ref; }
  bool operator==(const SsaOperand& o) const {
    return kind == o.kind && index == o.index && cval == o.cval;
  }
};

// Guard atom: boolean def index with a negation bit, (def << 1) | neg.
using GuardAtom = u32;
inline GuardAtom guard_atom(u32 def, bool neg) { return (def << 1) | (neg ? 1u : 0u); }
inline u32 guard_def(GuardAtom a) { return a >> 1; }
inline bool guard_neg(GuardAtom a) { return (a & 1) != 0; }

struct SsaDef {
  std::string name;
  SsaOp op = SsaOp::Const;
  SsaOperand a, b, c;
  std::vector<GuardAtom> guard;  // creation context; slicing metadata only
};

struct SsaAssert {
  u32 id = 0;             // program-order ordinal
  SsaOperand cond;        // violated iff guard holds and cond == 0
  std::vector<GuardAtom> guard;
  StmtId origin = 0;
  std::vector<SsaOperand> required;  // seen-flags that must be nonzero
};

struct SsaAssume {
  SsaOperand cond;
  std::vector<GuardAtom> guard;
  StmtId origin = 0;
};

struct SsaNondet {
  std::string name;
  StmtId origin = 0;  // havoc site
};

struct SsaEvent {
  enum class Kind { Def, Assert, Assume } kind;
  u32 index;
};

struct SsaProgram {
  unsigned width = 8;
  unsigned unwind_bound = 0;
  bool sliced = false;
  std::vector<SsaDef> defs;
  std::vector<SsaAssert> asserts;
  std::vector<SsaAssume> assumes;
  std::vector<SsaNondet> nondets;
  std::vector<SsaEvent> order;  // program order of defs/asserts/assumes
};

/// Convert a loop-free, call-free entry function to guarded single-assignment
/// form. Array accesses and divisions emit instrumented bounds/nonzero
/// assertions; havoc introduces free names recorded in `nondets`.
/// `required_flags` names variables whose current value gates every assertion
/// (feature-requirement instrumentation).
SsaProgram to_ssa(const Program& p, unsigned width,
                  const std::vector<std::string>& required_flags = {},
                  unsigned unwind_bound = 0);

/// Assumption propagation + cone of influence. Equisatisfiable with the input
/// for the assertion-violation query and never larger.
SsaProgram slice(const SsaProgram& s);

/// Textual dump: one `name := expr [guard]` line per equation, then ASSUME and
/// ASSERT lines.
std::string dump_ssa(const SsaProgram& s);

}  // namespace swarmbmc
