#include <algorithm>
#include <stdexcept>

#include "swarmbmc/bmc.hpp"
#include "swarmbmc/interp.hpp"

namespace swarmbmc {

u64 eval_unop(UnOp op, u64 a, unsigned width) {
  switch (op) {
    case UnOp::Neg: return wrap(~a + 1, width);
    case UnOp::Not: return wrap(a, width) == 0 ? 1 : 0;
  }
  return 0;
}

u64 eval_binop(BinOp op, u64 a, u64 b, unsigned width, bool* div_by_zero) {
  a = wrap(a, width);
  b = wrap(b, width);
  const i64 sa = as_signed(a, width);
  const i64 sb = as_signed(b, width);
  switch (op) {
    case BinOp::Add: return wrap(a + b, width);
    case BinOp::Sub: return wrap(a - b, width);
    case BinOp::Mul: return wrap(a * b, width);
    case BinOp::Div: {
      if (sb == 0) {
        if (div_by_zero) *div_by_zero = true;
        return 0;
      }
      // INT_MIN / -1 wraps back to INT_MIN.
      if (sb == -1) return wrap(~a + 1, width);
      return from_signed(sa / sb, width);
    }
    case BinOp::Rem: {
      if (sb == 0) {
        if (div_by_zero) *div_by_zero = true;
        return 0;
      }
      if (sb == -1) return 0;
      return from_signed(sa % sb, width);
    }
    case BinOp::Lt: return sa < sb ? 1 : 0;
    case BinOp::Le: return sa <= sb ? 1 : 0;
    case BinOp::Gt: return sa > sb ? 1 : 0;
    case BinOp::Ge: return sa >= sb ? 1 : 0;
    case BinOp::Eq: return a == b ? 1 : 0;
    case BinOp::Ne: return a != b ? 1 : 0;
    case BinOp::And: return (a != 0 && b != 0) ? 1 : 0;
    case BinOp::Or: return (a != 0 || b != 0) ? 1 : 0;
  }
  return 0;
}

namespace {

struct LinearTape : TapeSource {
  const std::vector<u64>& values;
  unsigned width;
  std::size_t pos = 0;
  explicit LinearTape(const std::vector<u64>& v, unsigned w) : values(v), width(w) {}
  std::optional<u64> next(StmtId) override {
    if (pos >= values.size()) return std::nullopt;
    return wrap(values[pos++], width);
  }
};

struct Value {
  bool is_array = false;
  u64 scalar = 0;
  std::vector<u64> elems;
};

// Thrown to unwind on any abnormal end of execution.
struct Halt {
  ExecutionOutcome::Kind kind;
  StmtId stmt;
};

struct ReturnSignal {
  u64 value;
};

class Interp {
 public:
  Interp(const Program& p, TapeSource& tape, const ExecOptions& opts, const TraceSink& sink)
      : p_(p), tape_(tape), opts_(opts), sink_(sink) {}

  ExecutionOutcome run() {
    ExecutionOutcome out;
    globals_.clear();
    for (const auto& g : p_.globals) {
      Value v;
      if (g.array_size != -1) {
        v.is_array = true;
        v.elems.assign(static_cast<std::size_t>(g.array_size), 0);
      }
      globals_[g.name] = v;
    }
    try {
      Frame frame;
      frames_.push_back(&frame);
      try {
        exec_block(p_.entry_function().body, frame);
      } catch (const ReturnSignal&) {
        // return from main just ends the program
      }
      frames_.pop_back();
      out.kind = ExecutionOutcome::Kind::Completed;
    } catch (const Halt& h) {
      out.kind = h.kind;
      out.stmt = h.stmt;
      out.step_index = steps_;
    }
    out.log = std::move(log_);
    out.steps = steps_;
    return out;
  }

 private:
  using Scope = std::map<std::string, Value>;
  struct Frame {
    std::vector<Scope> scopes;
  };

  Value* lookup(const std::string& name) {
    Frame* f = frames_.back();
    for (auto it = f->scopes.rbegin(); it != f->scopes.rend(); ++it) {
      auto v = it->find(name);
      if (v != it->end()) return &v->second;
    }
    auto g = globals_.find(name);
    return g == globals_.end() ? nullptr : &g->second;
  }

  void step(const Stmt& s) {
    if (++steps_ > opts_.step_limit) throw Halt{ExecutionOutcome::Kind::StepLimit, s.origin};
  }

  void trace(const Stmt& s) {
    if (!sink_) return;
    TraceEntry e;
    e.stmt = s.origin;
    e.line = p_.loc_of(s.origin).line;
    for (const auto& [name, v] : globals_)
      if (!v.is_array) e.vars[name] = as_signed(v.scalar, opts_.width);
    for (const auto& scope : frames_.back()->scopes)
      for (const auto& [name, v] : scope)
        if (!v.is_array) e.vars[name] = as_signed(v.scalar, opts_.width);
    sink_(e);
  }

  u64 eval(const Expr& e, const Stmt& at) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return wrap(static_cast<u64>(e.value), opts_.width);
      case Expr::Kind::Var: {
        Value* v = lookup(e.name);
        if (!v || v->is_array) throw std::logic_error("interpreter: bad variable " + e.name);
        return v->scalar;
      }
      case Expr::Kind::Index: {
        Value* v = lookup(e.name);
        if (!v || !v->is_array) throw std::logic_error("interpreter: bad array " + e.name);
        u64 idx = eval(*e.lhs, at);
        i64 s = as_signed(idx, opts_.width);
        if (s < 0 || s >= static_cast<i64>(v->elems.size()))
          throw Halt{ExecutionOutcome::Kind::AssertionViolation, at.origin};
        return v->elems[static_cast<std::size_t>(s)];
      }
      case Expr::Kind::Unary:
        return eval_unop(e.un, eval(*e.lhs, at), opts_.width);
      case Expr::Kind::Binary: {
        if (e.bin == BinOp::And) {
          if (eval(*e.lhs, at) == 0) return 0;
          return eval(*e.rhs, at) != 0 ? 1 : 0;
        }
        if (e.bin == BinOp::Or) {
          if (eval(*e.lhs, at) != 0) return 1;
          return eval(*e.rhs, at) != 0 ? 1 : 0;
        }
        u64 a = eval(*e.lhs, at);
        u64 b = eval(*e.rhs, at);
        bool div_zero = false;
        u64 r = eval_binop(e.bin, a, b, opts_.width, &div_zero);
        if (div_zero) throw Halt{ExecutionOutcome::Kind::AssertionViolation, at.origin};
        return r;
      }
    }
    return 0;
  }

  void exec_block(const std::vector<StmtPtr>& body, Frame& frame) {
    frame.scopes.emplace_back();
    for (const auto& s : body) exec(*s, frame);
    frame.scopes.pop_back();
  }

  void exec(const Stmt& s, Frame& frame) {
    step(s);
    switch (s.kind) {
      case Stmt::Kind::DeclScalar: {
        Value v;
        v.scalar = s.expr ? eval(*s.expr, s) : 0;
        frame.scopes.back()[s.name] = v;
        trace(s);
        break;
      }
      case Stmt::Kind::Assign: {
        u64 v = eval(*s.expr, s);
        lookup(s.name)->scalar = v;
        trace(s);
        break;
      }
      case Stmt::Kind::Havoc: {
        auto v = tape_.next(s.origin);
        if (!v) throw Halt{ExecutionOutcome::Kind::TapeExhausted, s.origin};
        lookup(s.name)->scalar = wrap(*v, opts_.width);
        trace(s);
        break;
      }
      case Stmt::Kind::Store: {
        u64 idx = eval(*s.expr, s);
        u64 val = eval(*s.value, s);
        Value* arr = lookup(s.name);
        i64 si = as_signed(idx, opts_.width);
        if (si < 0 || si >= static_cast<i64>(arr->elems.size()))
          throw Halt{ExecutionOutcome::Kind::AssertionViolation, s.origin};
        arr->elems[static_cast<std::size_t>(si)] = val;
        trace(s);
        break;
      }
      case Stmt::Kind::If: {
        if (eval(*s.expr, s) != 0)
          exec_block(s.body, frame);
        else
          exec_block(s.else_body, frame);
        break;
      }
      case Stmt::Kind::While: {
        unsigned iters = 0;
        while (eval(*s.expr, s) != 0) {
          if (opts_.loop_bound && iters >= *opts_.loop_bound)
            throw Halt{ExecutionOutcome::Kind::AssumeBlocked, s.origin};
          ++iters;
          exec_block(s.body, frame);
          step(s);  // each iteration counts
        }
        break;
      }
      case Stmt::Kind::For: {
        frame.scopes.emplace_back();  // for-init scope
        if (s.init) exec(*s.init, frame);
        unsigned iters = 0;
        while (eval(*s.expr, s) != 0) {
          if (opts_.loop_bound && iters >= *opts_.loop_bound)
            throw Halt{ExecutionOutcome::Kind::AssumeBlocked, s.origin};
          ++iters;
          exec_block(s.body, frame);
          if (s.step) exec(*s.step, frame);
          step(s);
        }
        frame.scopes.pop_back();
        break;
      }
      case Stmt::Kind::Call: {
        const FunctionDef* callee = p_.find_function(s.name);
        if (!callee) throw std::logic_error("interpreter: unknown function " + s.name);
        std::vector<u64> args;
        args.reserve(s.args.size());
        for (const auto& a : s.args) args.push_back(eval(*a, s));
        Frame inner;
        inner.scopes.emplace_back();
        for (std::size_t i = 0; i < callee->params.size(); ++i) {
          Value v;
          v.scalar = args[i];
          inner.scopes.back()[callee->params[i]] = v;
        }
        frames_.push_back(&inner);
        u64 result = 0;
        try {
          exec_block(callee->body, inner);
        } catch (const ReturnSignal& r) {
          result = r.value;
        }
        frames_.pop_back();
        if (!s.target.empty()) lookup(s.target)->scalar = result;
        trace(s);
        break;
      }
      case Stmt::Kind::Return: {
        u64 v = s.expr ? eval(*s.expr, s) : 0;
        trace(s);
        throw ReturnSignal{v};
      }
      case Stmt::Kind::Assert: {
        if (eval(*s.expr, s) == 0)
          throw Halt{ExecutionOutcome::Kind::AssertionViolation, s.origin};
        trace(s);
        break;
      }
      case Stmt::Kind::Assume: {
        if (eval(*s.expr, s) == 0)
          throw Halt{ExecutionOutcome::Kind::AssumeBlocked, s.origin};
        trace(s);
        break;
      }
      case Stmt::Kind::Log: {
        log_.push_back(s.name);
        trace(s);
        break;
      }
    }
  }

 private:
  const Program& p_;
  TapeSource& tape_;
  const ExecOptions& opts_;
  const TraceSink& sink_;
  std::map<std::string, Value> globals_;
  std::vector<Frame*> frames_;
  std::vector<std::string> log_;
  u64 steps_ = 0;
};

}  // namespace

ExecutionOutcome execute(const Program& p, TapeSource& tape, const ExecOptions& opts,
                         const TraceSink& sink) {
  Interp interp(p, tape, opts, sink);
  return interp.run();
}

ExecutionOutcome execute(const Program& p, const NondetTape& tape, const ExecOptions& opts,
                         const TraceSink& sink) {
  LinearTape src(tape.values, opts.width);
  return execute(p, src, opts, sink);
}

std::vector<StmtId> havoc_sites(const Program& p) {
  std::vector<StmtId> sites;
  // Unrolled or inlined copies share an origin; report each site once, in
  // first-occurrence program order.
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == Stmt::Kind::Havoc &&
          std::find(sites.begin(), sites.end(), s->origin) == sites.end())
        sites.push_back(s->origin);
      if (s->init) walk({s->init});
      walk(s->body);
      if (s->step) walk({s->step});
      walk(s->else_body);
    }
  };
  for (const auto& fn : p.functions) walk(fn.body);
  return sites;
}

namespace {

constexpr u64 kMaxExploredTapes = 20'000'000;

struct DfsState {
  const Program& p;
  ExecOptions opts;
  // site (origin id) -> domain; empty map means the shared domain applies.
  std::map<StmtId, const std::vector<u64>*> site_domains;
  const std::vector<u64>* shared_domain;
  const TapeVisitor& visit;
  u64 explored = 0;
  bool stopped = false;

  const std::vector<u64>& domain_for(StmtId site) const {
    auto it = site_domains.find(site);
    if (it != site_domains.end()) return *it->second;
    return *shared_domain;
  }

  // Runs the tape; on TapeExhausted extends it with each domain value of the
  // site that ran dry. DFS in ascending value order visits minimal tapes in
  // lexicographic order.
  void dfs(std::vector<u64>& tape) {
    if (stopped) return;
    NondetTape t{tape};
    StmtId exhausted_site = 0;
    struct ProbeTape : TapeSource {
      const std::vector<u64>& values;
      std::size_t pos = 0;
      StmtId* exhausted;
      ProbeTape(const std::vector<u64>& v, StmtId* e) : values(v), exhausted(e) {}
      std::optional<u64> next(StmtId site) override {
        if (pos >= values.size()) {
          *exhausted = site;
          return std::nullopt;
        }
        return values[pos++];
      }
    } src(tape, &exhausted_site);
    ExecutionOutcome out = execute(p, src, opts);
    if (out.kind == ExecutionOutcome::Kind::TapeExhausted) {
      for (u64 v : domain_for(exhausted_site)) {
        tape.push_back(wrap(v, opts.width));
        dfs(tape);
        tape.pop_back();
        if (stopped) return;
      }
      return;
    }
    if (++explored > kMaxExploredTapes)
      throw SpaceTooLargeError("tape space exceeds the enumeration budget");
    if (!visit(t, out)) stopped = true;
  }
};

}  // namespace

void for_each_tape(const Program& p, unsigned k, unsigned width,
                   const std::vector<std::vector<u64>>& per_site, const TapeVisitor& visit) {
  ExecOptions opts;
  opts.width = width;
  opts.loop_bound = k;

  std::vector<u64> full_domain;
  std::vector<StmtId> sites = havoc_sites(p);
  DfsState state{p, opts, {}, nullptr, visit};
  if (per_site.empty()) {
    if (width > 24) throw SpaceTooLargeError("full domain too large; pass explicit domains");
    for (u64 v = 0; v <= width_mask(width); ++v) full_domain.push_back(v);
    state.shared_domain = &full_domain;
  } else if (per_site.size() == 1) {
    state.shared_domain = &per_site[0];
  } else {
    if (per_site.size() != sites.size())
      throw SpaceTooLargeError("per-site domain count does not match havoc sites");
    state.shared_domain = &per_site[0];
    for (std::size_t i = 0; i < sites.size(); ++i) state.site_domains[sites[i]] = &per_site[i];
  }

  std::vector<u64> tape;
  state.dfs(tape);
}

OracleVerdict enumerate_per_site(const Program& p, unsigned k, unsigned width,
                                 const std::vector<std::vector<u64>>& per_site) {
  OracleVerdict verdict;
  for_each_tape(p, k, width, per_site,
                [&](const NondetTape& tape, const ExecutionOutcome& out) {
                  if (out.kind == ExecutionOutcome::Kind::AssertionViolation) {
                    verdict.fails = true;
                    verdict.first_failing = tape;
                    return false;
                  }
                  return true;
                });
  return verdict;
}

OracleVerdict enumerate(const Program& p, unsigned k, unsigned width,
                        const std::vector<u64>* domain) {
  std::vector<std::vector<u64>> per_site;
  if (domain) per_site.push_back(*domain);
  return enumerate_per_site(p, k, width, per_site);
}

bool replay(const Program& base, const Counterexample& cex) {
  ExecOptions opts;
  opts.width = cex.width;
  ExecutionOutcome out = execute(base, cex.tape, opts);
  if (out.kind != ExecutionOutcome::Kind::AssertionViolation) return false;
  if (cex.violated_origin != 0) return out.stmt == cex.violated_origin;
  // Counterexamples loaded from JSON carry only the source position.
  SourceLoc loc = base.loc_of(out.stmt);
  return loc.line == cex.violated_loc.line;
}

}  // namespace swarmbmc
