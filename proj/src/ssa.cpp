#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "swarmbmc/interp.hpp"
#include "swarmbmc/ssa.hpp"

namespace swarmbmc {

namespace {

bool bool_valued(SsaOp op) {
  switch (op) {
    case SsaOp::Lt: case SsaOp::Le: case SsaOp::Eq: case SsaOp::Nz:
    case SsaOp::BNot: case SsaOp::BAnd: case SsaOp::BOr:
      return true;
    default:
      return false;
  }
}

struct SlotValue {
  bool is_array = false;
  SsaOperand scalar;
  std::vector<SsaOperand> elems;
};

class Builder {
 public:
  Builder(const Program& p, unsigned width, const std::vector<std::string>& required_flags)
      : p_(p), width_(width) {
    out_.width = width;
    scopes_.emplace_back();
    for (const auto& g : p.globals) {
      if (g.array_size != -1 && g.array_size <= 0)
        throw std::logic_error("ssa: program not validated (bad array size)");
      u32 slot = new_slot(g.name, g.is_array(), g.array_size);
      SlotValue v;
      if (g.is_array()) {
        v.is_array = true;
        v.elems.assign(static_cast<std::size_t>(g.array_size), SsaOperand::constant(0));
      } else {
        v.scalar = SsaOperand::constant(0);
      }
      env_[slot] = v;
    }
    for (const auto& flag : required_flags) {
      const u32* slot = find_slot(flag);
      if (!slot) throw std::logic_error("required flag not declared: " + flag);
      flag_slots_.push_back(*slot);
    }
  }

  SsaProgram run() {
    const FunctionDef& entry = p_.entry_function();
    scopes_.emplace_back();
    for (const auto& s : entry.body) stmt(*s);
    scopes_.pop_back();
    return std::move(out_);
  }

 private:
  struct SlotMeta {
    std::string name;
    bool is_array = false;
    i64 size = 0;
  };

  u32 new_slot(const std::string& name, bool is_array, i64 size) {
    u32 id = static_cast<u32>(slot_meta_.size());
    slot_meta_.push_back({name, is_array, size});
    scopes_.back()[name] = id;
    return id;
  }

  const u32* find_slot(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  u32 slot_of(const std::string& name) const {
    const u32* s = find_slot(name);
    if (!s) throw std::logic_error("ssa: unbound name " + name);
    return *s;
  }

  u64 fold_value(SsaOp op, u64 a, u64 b, u64 c) const {
    switch (op) {
      case SsaOp::Const: case SsaOp::Copy: return wrap(a, width_);
      case SsaOp::Add: return eval_binop(BinOp::Add, a, b, width_, nullptr);
      case SsaOp::Sub: return eval_binop(BinOp::Sub, a, b, width_, nullptr);
      case SsaOp::Mul: return eval_binop(BinOp::Mul, a, b, width_, nullptr);
      case SsaOp::Div: return eval_binop(BinOp::Div, a, b, width_, nullptr);
      case SsaOp::Rem: return eval_binop(BinOp::Rem, a, b, width_, nullptr);
      case SsaOp::Neg: return eval_unop(UnOp::Neg, a, width_);
      case SsaOp::Lt: return eval_binop(BinOp::Lt, a, b, width_, nullptr);
      case SsaOp::Le: return eval_binop(BinOp::Le, a, b, width_, nullptr);
      case SsaOp::Eq: return eval_binop(BinOp::Eq, a, b, width_, nullptr);
      case SsaOp::Nz: return wrap(a, width_) != 0 ? 1 : 0;
      case SsaOp::BNot: return wrap(a, width_) == 0 ? 1 : 0;
      case SsaOp::BAnd: return (wrap(a, width_) != 0 && wrap(b, width_) != 0) ? 1 : 0;
      case SsaOp::BOr: return (wrap(a, width_) != 0 || wrap(b, width_) != 0) ? 1 : 0;
      case SsaOp::Select: return wrap(a, width_) != 0 ? wrap(b, width_) : wrap(c, width_);
    }
    return 0;
  }

  // Emit one equation, constant-folding where the operands allow it.
  SsaOperand emit(SsaOp op, SsaOperand a, SsaOperand b = {}, SsaOperand c = {},
                  std::string name = "") {
    switch (op) {
      case SsaOp::Const:
        return SsaOperand::constant(wrap(a.cval, width_));
      case SsaOp::Copy:
        return a;
      case SsaOp::Select:
        if (a.is_const()) return wrap(a.cval, width_) != 0 ? b : c;
        if (b == c) return b;
        break;
      case SsaOp::Nz:
        if (a.is_const()) return SsaOperand::constant(wrap(a.cval, width_) != 0 ? 1 : 0);
        if (a.is_ref() && bool_valued(out_.defs[a.index].op)) return a;
        break;
      case SsaOp::BAnd:
        if (a.is_const()) return wrap(a.cval, width_) != 0 ? b : SsaOperand::constant(0);
        if (b.is_const()) return wrap(b.cval, width_) != 0 ? a : SsaOperand::constant(0);
        break;
      case SsaOp::BOr:
        if (a.is_const()) return wrap(a.cval, width_) != 0 ? SsaOperand::constant(1) : b;
        if (b.is_const()) return wrap(b.cval, width_) != 0 ? SsaOperand::constant(1) : a;
        break;
      default:
        break;
    }
    bool foldable = a.is_const() &&
                    (op == SsaOp::Neg || op == SsaOp::Nz || op == SsaOp::BNot ||
                     (b.is_const() &&
                      (op != SsaOp::Select || c.is_const())));
    if (foldable)
      return SsaOperand::constant(fold_value(op, a.cval, b.cval, c.cval));

    u32 idx = static_cast<u32>(out_.defs.size());
    SsaDef def;
    def.name = name.empty() ? "t" + std::to_string(idx) : std::move(name);
    def.op = op;
    def.a = a;
    def.b = b;
    def.c = c;
    def.guard = guard_;
    out_.defs.push_back(std::move(def));
    out_.order.push_back({SsaEvent::Kind::Def, idx});
    return SsaOperand::ref(idx);
  }

  void add_assert(SsaOperand cond, StmtId origin) {
    SsaAssert a;
    a.id = static_cast<u32>(out_.asserts.size());
    a.cond = cond;
    a.guard = guard_;
    a.origin = origin;
    for (u32 slot : flag_slots_) a.required.push_back(env_[slot].scalar);
    out_.order.push_back({SsaEvent::Kind::Assert, a.id});
    out_.asserts.push_back(std::move(a));
  }

  void add_assume(SsaOperand cond, StmtId origin) {
    SsaAssume a;
    a.cond = cond;
    a.guard = guard_;
    a.origin = origin;
    out_.order.push_back({SsaEvent::Kind::Assume, static_cast<u32>(out_.assumes.size())});
    out_.assumes.push_back(std::move(a));
  }

  SsaOperand bound_check_and_read(const std::string& array, SsaOperand idx, StmtId origin) {
    u32 slot = slot_of(array);
    const SlotMeta& meta = slot_meta_[slot];
    if (!meta.is_array) throw std::logic_error("ssa: not an array: " + array);
    emit_bounds_assert(idx, meta.size, origin);
    const auto& elems = env_[slot].elems;
    SsaOperand acc = SsaOperand::constant(0);
    for (i64 j = 0; j < meta.size; ++j) {
      SsaOperand cj = emit(SsaOp::Eq, idx, SsaOperand::constant(static_cast<u64>(j)));
      acc = emit(SsaOp::Select, cj, elems[static_cast<std::size_t>(j)], acc);
    }
    return acc;
  }

  void emit_bounds_assert(SsaOperand idx, i64 size, StmtId origin) {
    SsaOperand ge0 = emit(SsaOp::Le, SsaOperand::constant(0), idx);
    SsaOperand lt = emit(SsaOp::Lt, idx, SsaOperand::constant(static_cast<u64>(size)));
    SsaOperand in_bounds = emit(SsaOp::BAnd, ge0, lt);
    add_assert(in_bounds, origin);
  }

  SsaOperand expr(const Expr& e, StmtId origin) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return SsaOperand::constant(wrap(static_cast<u64>(e.value), width_));
      case Expr::Kind::Var: {
        const SlotValue& v = env_.at(slot_of(e.name));
        if (v.is_array) throw std::logic_error("ssa: array used as scalar");
        return v.scalar;
      }
      case Expr::Kind::Index:
        return bound_check_and_read(e.name, expr(*e.lhs, origin), origin);
      case Expr::Kind::Unary: {
        SsaOperand a = expr(*e.lhs, origin);
        if (e.un == UnOp::Neg) return emit(SsaOp::Neg, a);
        return emit(SsaOp::BNot, a);
      }
      case Expr::Kind::Binary:
        return binary(e, origin);
    }
    return SsaOperand::constant(0);
  }

  SsaOperand binary(const Expr& e, StmtId origin) {
    // Short-circuit && and || gate the instrumented checks of their right
    // operand, matching concrete evaluation order.
    if (e.bin == BinOp::And || e.bin == BinOp::Or) {
      bool is_and = e.bin == BinOp::And;
      SsaOperand a = expr(*e.lhs, origin);
      SsaOperand ab = emit(SsaOp::Nz, a);
      if (ab.is_const()) {
        bool taken = wrap(ab.cval, width_) != 0;
        if (is_and ? !taken : taken) return SsaOperand::constant(is_and ? 0 : 1);
        return emit(SsaOp::Nz, expr(*e.rhs, origin));
      }
      guard_.push_back(guard_atom(ab.index, !is_and));
      SsaOperand bb = emit(SsaOp::Nz, expr(*e.rhs, origin));
      guard_.pop_back();
      if (is_and) return emit(SsaOp::Select, ab, bb, SsaOperand::constant(0));
      return emit(SsaOp::Select, ab, SsaOperand::constant(1), bb);
    }

    SsaOperand a = expr(*e.lhs, origin);
    SsaOperand b = expr(*e.rhs, origin);
    switch (e.bin) {
      case BinOp::Add: return emit(SsaOp::Add, a, b);
      case BinOp::Sub: return emit(SsaOp::Sub, a, b);
      case BinOp::Mul: return emit(SsaOp::Mul, a, b);
      case BinOp::Div:
      case BinOp::Rem: {
        add_assert(emit(SsaOp::Nz, b), origin);  // division by zero check
        return emit(e.bin == BinOp::Div ? SsaOp::Div : SsaOp::Rem, a, b);
      }
      case BinOp::Lt: return emit(SsaOp::Lt, a, b);
      case BinOp::Le: return emit(SsaOp::Le, a, b);
      case BinOp::Gt: return emit(SsaOp::Lt, b, a);
      case BinOp::Ge: return emit(SsaOp::Le, b, a);
      case BinOp::Eq: return emit(SsaOp::Eq, a, b);
      case BinOp::Ne: return emit(SsaOp::BNot, emit(SsaOp::Eq, a, b));
      default:
        throw std::logic_error("ssa: unreachable binop");
    }
  }

  void block(const std::vector<StmtPtr>& body) {
    scopes_.emplace_back();
    for (const auto& s : body) stmt(*s);
    scopes_.pop_back();
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::DeclScalar: {
        SsaOperand init = s.expr ? expr(*s.expr, s.origin) : SsaOperand::constant(0);
        u32 slot = new_slot(s.name, false, 0);
        SlotValue v;
        v.scalar = init;
        env_[slot] = v;
        break;
      }
      case Stmt::Kind::Assign: {
        SsaOperand val = expr(*s.expr, s.origin);
        env_[slot_of(s.name)].scalar = val;
        break;
      }
      case Stmt::Kind::Havoc: {
        u32 idx = static_cast<u32>(out_.nondets.size());
        out_.nondets.push_back({"n" + std::to_string(idx), s.origin});
        env_[slot_of(s.name)].scalar = SsaOperand::nondet(idx);
        break;
      }
      case Stmt::Kind::Store: {
        SsaOperand idx = expr(*s.expr, s.origin);
        SsaOperand val = expr(*s.value, s.origin);
        u32 slot = slot_of(s.name);
        const SlotMeta& meta = slot_meta_[slot];
        if (!meta.is_array) throw std::logic_error("ssa: store to non-array");
        emit_bounds_assert(idx, meta.size, s.origin);
        auto& elems = env_[slot].elems;
        for (i64 j = 0; j < meta.size; ++j) {
          SsaOperand cj = emit(SsaOp::Eq, idx, SsaOperand::constant(static_cast<u64>(j)));
          elems[static_cast<std::size_t>(j)] =
              emit(SsaOp::Select, cj, val, elems[static_cast<std::size_t>(j)],
                   meta.name + "#" + std::to_string(j) + "@" + std::to_string(out_.defs.size()));
        }
        break;
      }
      case Stmt::Kind::If: {
        SsaOperand cond = expr(*s.expr, s.origin);
        SsaOperand cb = emit(SsaOp::Nz, cond);
        if (cb.is_const()) {
          if (wrap(cb.cval, width_) != 0) block(s.body);
          else block(s.else_body);
          return;
        }
        u32 watermark = static_cast<u32>(slot_meta_.size());
        auto before = env_;

        guard_.push_back(guard_atom(cb.index, false));
        block(s.body);
        auto then_env = std::move(env_);
        guard_.pop_back();

        env_ = before;
        guard_.push_back(guard_atom(cb.index, true));
        block(s.else_body);
        auto else_env = std::move(env_);
        guard_.pop_back();

        env_ = std::move(before);
        join(cb, then_env, else_env, watermark);
        break;
      }
      case Stmt::Kind::Assert:
        add_assert(emit(SsaOp::Nz, expr(*s.expr, s.origin)), s.origin);
        break;
      case Stmt::Kind::Assume:
        add_assume(emit(SsaOp::Nz, expr(*s.expr, s.origin)), s.origin);
        break;
      case Stmt::Kind::Log:
        break;  // semantically inert here
      case Stmt::Kind::While:
      case Stmt::Kind::For:
      case Stmt::Kind::Call:
      case Stmt::Kind::Return:
        throw std::logic_error("ssa: program must be inlined and unrolled first");
    }
  }

  // Guarded-select phi for every slot the branches disagree on.
  void join(SsaOperand cond, const std::map<u32, SlotValue>& then_env,
            const std::map<u32, SlotValue>& else_env, u32 watermark) {
    for (const auto& [slot, tv] : then_env) {
      if (slot >= watermark) continue;  // branch-local, lexically dead
      auto it = else_env.find(slot);
      if (it == else_env.end()) continue;
      const SlotValue& ev = it->second;
      const SlotMeta& meta = slot_meta_[slot];
      SlotValue merged = tv;
      if (!tv.is_array) {
        if (!(tv.scalar == ev.scalar)) {
          merged.scalar = emit(SsaOp::Select, cond, tv.scalar, ev.scalar,
                               meta.name + "@" + std::to_string(out_.defs.size()));
        }
      } else {
        for (std::size_t j = 0; j < tv.elems.size(); ++j) {
          if (tv.elems[j] == ev.elems[j]) continue;
          merged.elems[j] = emit(SsaOp::Select, cond, tv.elems[j], ev.elems[j],
                                 meta.name + "#" + std::to_string(j) + "@" +
                                     std::to_string(out_.defs.size()));
        }
      }
      env_[slot] = merged;
    }
  }

  const Program& p_;
  unsigned width_;
  SsaProgram out_;
  std::vector<std::map<std::string, u32>> scopes_;
  std::vector<SlotMeta> slot_meta_;
  std::map<u32, SlotValue> env_;
  std::vector<GuardAtom> guard_;
  std::vector<u32> flag_slots_;
};

}  // namespace

SsaProgram to_ssa(const Program& p, unsigned width,
                  const std::vector<std::string>& required_flags, unsigned unwind_bound) {
  Builder b(p, width, required_flags);
  SsaProgram out = b.run();
  out.unwind_bound = unwind_bound;
  return out;
}

namespace {

bool is_prefix(const std::vector<GuardAtom>& prefix, const std::vector<GuardAtom>& guard) {
  if (prefix.size() > guard.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i] != guard[i]) return false;
  return true;
}

}  // namespace

SsaProgram slice(const SsaProgram& s) {
  const std::size_t n_events = s.order.size();

  // Positions of events, for order-aware deadness.
  std::vector<std::size_t> def_pos(s.defs.size()), assert_pos(s.asserts.size()),
      assume_pos(s.assumes.size());
  for (std::size_t i = 0; i < n_events; ++i) {
    const SsaEvent& e = s.order[i];
    if (e.kind == SsaEvent::Kind::Def) def_pos[e.index] = i;
    else if (e.kind == SsaEvent::Kind::Assert) assert_pos[e.index] = i;
    else assume_pos[e.index] = i;
  }

  // Stage 1: guard forcing. Each assume(false) blocks everything at or below
  // its guard that comes after it in program order.
  struct Blocked {
    std::size_t pos;
    const std::vector<GuardAtom>* guard;
  };
  std::vector<Blocked> blocked;
  for (std::size_t i = 0; i < s.assumes.size(); ++i) {
    const SsaAssume& a = s.assumes[i];
    if (a.cond.is_const() && a.cond.cval == 0) blocked.push_back({assume_pos[i], &a.guard});
  }

  auto dead_at = [&](std::size_t pos, const std::vector<GuardAtom>& guard) {
    for (const auto& b : blocked)
      if (b.pos < pos && is_prefix(*b.guard, guard)) return true;
    return false;
  };

  std::vector<bool> def_dead(s.defs.size(), false);
  for (std::size_t i = 0; i < s.defs.size(); ++i)
    def_dead[i] = dead_at(def_pos[i], s.defs[i].guard);

  // Stage 1b: constant-fold selects whose arm definitions died. The dead arm
  // is unreachable on every surviving path.
  std::vector<SsaDef> defs = s.defs;
  auto arm_dead = [&](const SsaOperand& op) { return op.is_ref() && def_dead[op.index]; };
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (def_dead[i] || defs[i].op != SsaOp::Select) continue;
    bool t_dead = arm_dead(defs[i].b);
    bool e_dead = arm_dead(defs[i].c);
    if (t_dead && e_dead) {
      defs[i].op = SsaOp::Const;
      defs[i].a = SsaOperand::constant(0);
      defs[i].b = defs[i].c = SsaOperand{};
    } else if (t_dead) {
      defs[i].op = SsaOp::Copy;
      defs[i].a = defs[i].c;
      defs[i].b = defs[i].c = SsaOperand{};
    } else if (e_dead) {
      defs[i].op = SsaOp::Copy;
      defs[i].a = defs[i].b;
      defs[i].b = defs[i].c = SsaOperand{};
    }
  }

  std::vector<bool> assert_dead(s.asserts.size(), false);
  for (std::size_t i = 0; i < s.asserts.size(); ++i)
    assert_dead[i] = dead_at(assert_pos[i], s.asserts[i].guard);
  std::vector<bool> assume_dead(s.assumes.size(), false);
  for (std::size_t i = 0; i < s.assumes.size(); ++i)
    assume_dead[i] = dead_at(assume_pos[i], s.assumes[i].guard);

  // Stage 2: cone of influence from surviving asserts and assumes.
  std::vector<bool> keep(defs.size(), false);
  std::vector<u32> work;
  auto root_ref = [&](const SsaOperand& op) {
    if (op.is_ref() && !keep[op.index]) {
      keep[op.index] = true;
      work.push_back(op.index);
    }
  };
  auto root_guard = [&](const std::vector<GuardAtom>& guard) {
    for (GuardAtom g : guard) {
      u32 d = guard_def(g);
      if (!keep[d]) {
        keep[d] = true;
        work.push_back(d);
      }
    }
  };
  for (std::size_t i = 0; i < s.asserts.size(); ++i) {
    if (assert_dead[i]) continue;
    root_ref(s.asserts[i].cond);
    root_guard(s.asserts[i].guard);
    for (const auto& r : s.asserts[i].required) root_ref(r);
  }
  for (std::size_t i = 0; i < s.assumes.size(); ++i) {
    if (assume_dead[i]) continue;
    root_ref(s.assumes[i].cond);
    root_guard(s.assumes[i].guard);
  }
  while (!work.empty()) {
    u32 d = work.back();
    work.pop_back();
    if (def_dead[d])
      throw std::logic_error("slice: live reference into a blocked region");
    root_ref(defs[d].a);
    root_ref(defs[d].b);
    root_ref(defs[d].c);
    root_guard(defs[d].guard);
  }

  // Stage 3: rebuild with remapped references.
  SsaProgram out;
  out.width = s.width;
  out.unwind_bound = s.unwind_bound;
  out.sliced = true;
  out.nondets = s.nondets;

  std::vector<u32> def_map(defs.size(), 0);
  std::vector<u32> assert_map(s.asserts.size(), 0);
  std::vector<u32> assume_map(s.assumes.size(), 0);

  auto remap_operand = [&](SsaOperand op) {
    if (op.is_ref()) op.index = def_map[op.index];
    return op;
  };
  auto remap_guard = [&](const std::vector<GuardAtom>& guard) {
    std::vector<GuardAtom> g;
    g.reserve(guard.size());
    for (GuardAtom a : guard) g.push_back(guard_atom(def_map[guard_def(a)], guard_neg(a)));
    return g;
  };

  for (const SsaEvent& e : s.order) {
    switch (e.kind) {
      case SsaEvent::Kind::Def: {
        if (!keep[e.index]) break;
        SsaDef d = defs[e.index];
        d.a = remap_operand(d.a);
        d.b = remap_operand(d.b);
        d.c = remap_operand(d.c);
        d.guard = remap_guard(d.guard);
        def_map[e.index] = static_cast<u32>(out.defs.size());
        out.order.push_back({SsaEvent::Kind::Def, def_map[e.index]});
        out.defs.push_back(std::move(d));
        break;
      }
      case SsaEvent::Kind::Assert: {
        if (assert_dead[e.index]) break;
        SsaAssert a = s.asserts[e.index];
        a.cond = remap_operand(a.cond);
        a.guard = remap_guard(a.guard);
        for (auto& r : a.required) r = remap_operand(r);
        assert_map[e.index] = a.id = static_cast<u32>(out.asserts.size());
        out.order.push_back({SsaEvent::Kind::Assert, a.id});
        out.asserts.push_back(std::move(a));
        break;
      }
      case SsaEvent::Kind::Assume: {
        if (assume_dead[e.index]) break;
        SsaAssume a = s.assumes[e.index];
        a.cond = remap_operand(a.cond);
        a.guard = remap_guard(a.guard);
        assume_map[e.index] = static_cast<u32>(out.assumes.size());
        out.order.push_back({SsaEvent::Kind::Assume, assume_map[e.index]});
        out.assumes.push_back(std::move(a));
        break;
      }
    }
  }
  return out;
}

namespace {

std::string operand_text(const SsaProgram& s, const SsaOperand& op) {
  switch (op.kind) {
    case SsaOperand::Kind::Const:
      return std::to_string(as_signed(op.cval, s.width));
    case SsaOperand::Kind::Ref:
      return s.defs[op.index].name;
    case SsaOperand::Kind::Nondet:
      return s.nondets[op.index].name;
  }
  return "?";
}

std::string guard_text(const SsaProgram& s, const std::vector<GuardAtom>& guard) {
  if (guard.empty()) return "";
  std::string out = " [";
  for (std::size_t i = 0; i < guard.size(); ++i) {
    if (i) out += " & ";
    if (guard_neg(guard[i])) out += "!";
    out += s.defs[guard_def(guard[i])].name;
  }
  return out + "]";
}

}  // namespace

std::string dump_ssa(const SsaProgram& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.nondets.size(); ++i)
    os << s.nondets[i].name << " := nondet(" << i << ")\n";
  for (const SsaDef& d : s.defs) {
    os << d.name << " := ";
    auto a = [&] { return operand_text(s, d.a); };
    auto b = [&] { return operand_text(s, d.b); };
    auto c = [&] { return operand_text(s, d.c); };
    switch (d.op) {
      case SsaOp::Const: case SsaOp::Copy: os << a(); break;
      case SsaOp::Add: os << "(" << a() << " + " << b() << ")"; break;
      case SsaOp::Sub: os << "(" << a() << " - " << b() << ")"; break;
      case SsaOp::Mul: os << "(" << a() << " * " << b() << ")"; break;
      case SsaOp::Div: os << "(" << a() << " / " << b() << ")"; break;
      case SsaOp::Rem: os << "(" << a() << " % " << b() << ")"; break;
      case SsaOp::Neg: os << "-" << a(); break;
      case SsaOp::Lt: os << "(" << a() << " < " << b() << ")"; break;
      case SsaOp::Le: os << "(" << a() << " <= " << b() << ")"; break;
      case SsaOp::Eq: os << "(" << a() << " == " << b() << ")"; break;
      case SsaOp::Nz: os << "nz(" << a() << ")"; break;
      case SsaOp::BNot: os << "!" << a(); break;
      case SsaOp::BAnd: os << "(" << a() << " & " << b() << ")"; break;
      case SsaOp::BOr: os << "(" << a() << " | " << b() << ")"; break;
      case SsaOp::Select: os << "select(" << a() << ", " << b() << ", " << c() << ")"; break;
    }
    os << guard_text(s, d.guard) << "\n";
  }
  for (const SsaAssume& a : s.assumes)
    os << "ASSUME " << operand_text(s, a.cond) << guard_text(s, a.guard) << "\n";
  for (const SsaAssert& a : s.asserts)
    os << "ASSERT " << a.id << " " << operand_text(s, a.cond) << guard_text(s, a.guard) << "\n";
  return os.str();
}

}  // namespace swarmbmc
