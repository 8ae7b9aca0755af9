#include <algorithm>
#include <stdexcept>

#include "swarmbmc/encode.hpp"

namespace swarmbmc {

namespace {

using Vec = std::vector<int>;  // word of literals, LSB first

// Tseitin gate builder over signed literals. +1/-1 are constant true/false;
// gates fold constants so sliced instances stay strictly smaller.
class CnfBuilder {
 public:
  CnfBuilder() {
    f_.num_vars = 1;
    f_.clauses.push_back({1});  // variable 1 is the true constant
  }

  CnfFormula take() { return std::move(f_); }
  int num_vars() const { return f_.num_vars; }
  int num_clauses() const { return static_cast<int>(f_.clauses.size()); }

  int new_var() { return ++f_.num_vars; }

  void clause(std::vector<int> lits) { f_.clauses.push_back(std::move(lits)); }

  int land(int a, int b) {
    if (a == -1 || b == -1) return -1;
    if (a == 1) return b;
    if (b == 1) return a;
    if (a == b) return a;
    if (a == -b) return -1;
    int o = new_var();
    clause({-a, -b, o});
    clause({a, -o});
    clause({b, -o});
    return o;
  }

  int lor(int a, int b) { return -land(-a, -b); }

  int lxor(int a, int b) {
    if (a == 1) return -b;
    if (a == -1) return b;
    if (b == 1) return -a;
    if (b == -1) return a;
    if (a == b) return -1;
    if (a == -b) return 1;
    int o = new_var();
    clause({-a, -b, -o});
    clause({a, b, -o});
    clause({a, -b, o});
    clause({-a, b, o});
    return o;
  }

  // s ? a : b
  int lmux(int s, int a, int b) {
    if (s == 1) return a;
    if (s == -1) return b;
    if (a == b) return a;
    if (a == 1 && b == -1) return s;
    if (a == -1 && b == 1) return -s;
    int o = new_var();
    clause({-s, -a, o});
    clause({-s, a, -o});
    clause({s, -b, o});
    clause({s, b, -o});
    return o;
  }

  int big_and(const std::vector<int>& lits) {
    int acc = 1;
    for (int l : lits) acc = land(acc, l);
    return acc;
  }

  int big_or(const std::vector<int>& lits) {
    int acc = -1;
    for (int l : lits) acc = lor(acc, l);
    return acc;
  }

  // ---- word-level circuits ----

  Vec const_vec(u64 v, unsigned w) {
    Vec out(w);
    for (unsigned i = 0; i < w; ++i) out[i] = ((v >> i) & 1) ? 1 : -1;
    return out;
  }

  Vec fresh_vec(unsigned w) {
    Vec out(w);
    for (unsigned i = 0; i < w; ++i) out[i] = new_var();
    return out;
  }

  Vec bool_vec(int lit, unsigned w) {
    Vec out(w, -1);
    out[0] = lit;
    return out;
  }

  int nz(const Vec& a) { return big_or(a); }

  // a + b + cin; carry_out is written when requested.
  Vec add(const Vec& a, const Vec& b, int cin, int* carry_out = nullptr) {
    Vec out(a.size());
    int carry = cin;
    for (std::size_t i = 0; i < a.size(); ++i) {
      int axb = lxor(a[i], b[i]);
      out[i] = lxor(axb, carry);
      // majority(a, b, carry)
      carry = lor(land(a[i], b[i]), land(carry, axb));
    }
    if (carry_out) *carry_out = carry;
    return out;
  }

  Vec lnot_vec(const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
  }

  Vec sub(const Vec& a, const Vec& b, int* carry_out = nullptr) {
    return add(a, lnot_vec(b), 1, carry_out);
  }

  Vec neg(const Vec& a) {
    return add(lnot_vec(a), const_vec(0, static_cast<unsigned>(a.size())), 1);
  }

  // Borrow chain only; the difference bits are not materialized.
  int ult(const Vec& a, const Vec& b) {
    int carry = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      int nb = -b[i];
      int axb = lxor(a[i], nb);
      carry = lor(land(a[i], nb), land(carry, axb));
    }
    return -carry;  // no carry out of a + ~b + 1 means a < b
  }

  int slt(const Vec& a, const Vec& b) {
    int sa = a.back();
    int sb = b.back();
    return lmux(lxor(sa, sb), sa, ult(a, b));
  }

  int sle(const Vec& a, const Vec& b) { return -slt(b, a); }

  int eq(const Vec& a, const Vec& b) {
    std::vector<int> bits;
    bits.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) bits.push_back(-lxor(a[i], b[i]));
    return big_and(bits);
  }

  Vec mux_vec(int s, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = lmux(s, a[i], b[i]);
    return out;
  }

  Vec mul(const Vec& a, const Vec& b) {
    unsigned w = static_cast<unsigned>(a.size());
    Vec acc = const_vec(0, w);
    for (unsigned i = 0; i < w; ++i) {
      if (a[i] == -1) continue;
      Vec partial(w, -1);
      for (unsigned j = i; j < w; ++j) partial[j] = land(a[i], b[j - i]);
      acc = add(acc, partial, -1);
    }
    return acc;
  }

  // Restoring division on unsigned operands. Quotient is all-ones and the
  // remainder is left unconstrained-ish for b == 0; an instrumented assertion
  // dominates that case.
  void udivrem(const Vec& a, const Vec& b, Vec* q, Vec* r) {
    unsigned w = static_cast<unsigned>(a.size());
    Vec rem = const_vec(0, w);
    Vec quot(w, -1);
    Vec bext = b;
    bext.push_back(-1);  // zero-extend divisor to w+1 bits
    for (int i = static_cast<int>(w) - 1; i >= 0; --i) {
      Vec shifted(w + 1);
      shifted[0] = a[static_cast<std::size_t>(i)];
      for (unsigned j = 0; j < w; ++j) shifted[j + 1] = rem[j];
      int geq = 0;
      Vec trial = sub(shifted, bext, &geq);  // carry out: shifted >= b
      quot[static_cast<std::size_t>(i)] = geq;
      for (unsigned j = 0; j < w; ++j) rem[j] = lmux(geq, trial[j], shifted[j]);
    }
    *q = quot;
    *r = rem;
  }

  void sdivrem(const Vec& a, const Vec& b, Vec* q, Vec* r) {
    int sa = a.back();
    int sb = b.back();
    Vec ma = mux_vec(sa, neg(a), a);
    Vec mb = mux_vec(sb, neg(b), b);
    Vec uq, ur;
    udivrem(ma, mb, &uq, &ur);
    *q = mux_vec(lxor(sa, sb), neg(uq), uq);
    *r = mux_vec(sa, neg(ur), ur);
  }

 private:
  CnfFormula f_;
};

}  // namespace

EncodedInstance encode(const SsaProgram& s, unsigned width) {
  if (width < 2 || width > 64) throw WidthOutOfRangeError(width);

  CnfBuilder cb;
  EncodedInstance inst;

  std::vector<Vec> nondet_vecs;
  nondet_vecs.reserve(s.nondets.size());
  for (const auto& n : s.nondets) {
    Vec v = cb.fresh_vec(width);
    inst.var_map[n.name] = v;
    inst.nondet_bits.push_back(v);
    nondet_vecs.push_back(std::move(v));
  }

  std::vector<Vec> def_vecs(s.defs.size());
  std::vector<int> def_nz(s.defs.size(), 0);  // cached nonzero test, 0 = unset

  auto operand_vec = [&](const SsaOperand& op) -> const Vec& {
    static thread_local Vec tmp;
    switch (op.kind) {
      case SsaOperand::Kind::Const:
        tmp = cb.const_vec(wrap(op.cval, width), width);
        return tmp;
      case SsaOperand::Kind::Ref:
        return def_vecs[op.index];
      case SsaOperand::Kind::Nondet:
        return nondet_vecs[op.index];
    }
    return tmp;
  };

  auto operand_nz = [&](const SsaOperand& op) -> int {
    if (op.is_const()) return wrap(op.cval, width) != 0 ? 1 : -1;
    if (op.is_ref()) {
      if (def_nz[op.index] == 0) def_nz[op.index] = cb.nz(def_vecs[op.index]);
      return def_nz[op.index];
    }
    return cb.nz(nondet_vecs[op.index]);
  };

  // Guard conjunction, cached per distinct guard vector.
  std::map<std::vector<GuardAtom>, int> guard_cache;
  auto guard_lit = [&](const std::vector<GuardAtom>& guard) -> int {
    if (guard.empty()) return 1;
    auto it = guard_cache.find(guard);
    if (it != guard_cache.end()) return it->second;
    int acc = 1;
    for (GuardAtom g : guard) {
      int d = operand_nz(SsaOperand::ref(guard_def(g)));
      acc = cb.land(acc, guard_neg(g) ? -d : d);
    }
    guard_cache[guard] = acc;
    return acc;
  };

  // Assumes are ordered relative to assertions: a violation counts only if
  // every assumption encountered before it held.
  int assume_chain = 1;

  for (const SsaEvent& ev : s.order) {
    switch (ev.kind) {
      case SsaEvent::Kind::Def: {
        const SsaDef& d = s.defs[ev.index];
        Vec out;
        switch (d.op) {
          case SsaOp::Const:
            out = cb.const_vec(wrap(d.a.cval, width), width);
            break;
          case SsaOp::Copy:
            out = operand_vec(d.a);
            break;
          case SsaOp::Add: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.add(a, b, -1);
            break;
          }
          case SsaOp::Sub: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.sub(a, b);
            break;
          }
          case SsaOp::Mul: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.mul(a, b);
            break;
          }
          case SsaOp::Div:
          case SsaOp::Rem: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            Vec q, r;
            cb.sdivrem(a, b, &q, &r);
            out = d.op == SsaOp::Div ? q : r;
            break;
          }
          case SsaOp::Neg: {
            Vec a = operand_vec(d.a);
            out = cb.neg(a);
            break;
          }
          case SsaOp::Lt: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.bool_vec(cb.slt(a, b), width);
            break;
          }
          case SsaOp::Le: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.bool_vec(cb.sle(a, b), width);
            break;
          }
          case SsaOp::Eq: {
            Vec a = operand_vec(d.a), b = operand_vec(d.b);
            out = cb.bool_vec(cb.eq(a, b), width);
            break;
          }
          case SsaOp::Nz:
            out = cb.bool_vec(operand_nz(d.a), width);
            break;
          case SsaOp::BNot:
            out = cb.bool_vec(-operand_nz(d.a), width);
            break;
          case SsaOp::BAnd:
            out = cb.bool_vec(cb.land(operand_nz(d.a), operand_nz(d.b)), width);
            break;
          case SsaOp::BOr:
            out = cb.bool_vec(cb.lor(operand_nz(d.a), operand_nz(d.b)), width);
            break;
          case SsaOp::Select: {
            int sel = operand_nz(d.a);
            Vec b = operand_vec(d.b), c = operand_vec(d.c);
            out = cb.mux_vec(sel, b, c);
            break;
          }
        }
        def_vecs[ev.index] = out;
        inst.var_map[d.name] = out;
        break;
      }
      case SsaEvent::Kind::Assume: {
        const SsaAssume& a = s.assumes[ev.index];
        int g = guard_lit(a.guard);
        int holds = cb.lor(-g, operand_nz(a.cond));
        assume_chain = cb.land(assume_chain, holds);
        break;
      }
      case SsaEvent::Kind::Assert: {
        const SsaAssert& a = s.asserts[ev.index];
        int g = guard_lit(a.guard);
        int sel = cb.land(g, -operand_nz(a.cond));
        sel = cb.land(sel, assume_chain);
        for (const auto& r : a.required) sel = cb.land(sel, operand_nz(r));
        inst.assert_selectors.emplace_back(a.id, sel);
        inst.assert_origins.push_back(a.origin);
        break;
      }
    }
  }

  // The query: some assertion is violated.
  std::vector<int> violation;
  for (const auto& [id, sel] : inst.assert_selectors) {
    if (sel != -1) violation.push_back(sel);
  }
  if (violation.empty())
    cb.clause({-1});  // no violation is reachable: trivially unsat
  else
    cb.clause(std::move(violation));

  inst.cnf = cb.take();
  inst.stats.num_vars = inst.cnf.num_vars;
  inst.stats.num_clauses = static_cast<int>(inst.cnf.clauses.size());
  inst.stats.sliced = s.sliced;
  return inst;
}

}  // namespace swarmbmc
