#include <functional>
#include <map>
#include <set>

#include "swarmbmc/frontend.hpp"
#include "swarmbmc/transform.hpp"

namespace swarmbmc {

namespace {

std::shared_ptr<Stmt> clone(const Stmt& s) { return std::make_shared<Stmt>(s); }

// Fresh-id bookkeeping against the program being built.
struct IdGen {
  Program* out;

  StmtId fresh(StmtId origin) {
    StmtId id = out->next_id++;
    auto it = out->source_map.find(origin);
    out->source_map[id] = it == out->source_map.end() ? SourceLoc{} : it->second;
    return id;
  }

  std::shared_ptr<Stmt> make(Stmt::Kind kind, StmtId origin) {
    auto s = std::make_shared<Stmt>();
    s->kind = kind;
    s->origin = origin;
    s->id = fresh(origin);
    return s;
  }
};

std::vector<StmtPtr> copy_fresh(const std::vector<StmtPtr>& body, IdGen& gen);

StmtPtr copy_fresh(const StmtPtr& sp, IdGen& gen) {
  auto s = clone(*sp);
  s->id = gen.fresh(sp->origin);
  s->body = copy_fresh(sp->body, gen);
  s->else_body = copy_fresh(sp->else_body, gen);
  if (sp->init) s->init = copy_fresh(sp->init, gen);
  if (sp->step) s->step = copy_fresh(sp->step, gen);
  return s;
}

std::vector<StmtPtr> copy_fresh(const std::vector<StmtPtr>& body, IdGen& gen) {
  std::vector<StmtPtr> out;
  out.reserve(body.size());
  for (const auto& s : body) out.push_back(copy_fresh(s, gen));
  return out;
}

std::set<std::string> collect_names(const Program& p) {
  std::set<std::string> names;
  for (const auto& g : p.globals) names.insert(g.name);
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == Stmt::Kind::DeclScalar) names.insert(s->name);
      if (s->init) walk({s->init});
      walk(s->body);
      walk(s->else_body);
      if (s->step) walk({s->step});
    }
  };
  for (const auto& fn : p.functions) {
    names.insert(fn.name);
    for (const auto& param : fn.params) names.insert(param);
    walk(fn.body);
  }
  return names;
}

std::string fresh_name(std::set<std::string>& used, const std::string& base) {
  std::string name = base;
  int bump = 0;
  while (used.count(name)) name = base + "$" + std::to_string(++bump);
  used.insert(name);
  return name;
}

bool may_return(const Stmt& s) {
  if (s.kind == Stmt::Kind::Return) return true;
  for (const auto& c : s.body)
    if (may_return(*c)) return true;
  for (const auto& c : s.else_body)
    if (may_return(*c)) return true;
  return false;
}

bool may_return(const std::vector<StmtPtr>& body) {
  for (const auto& s : body)
    if (may_return(*s)) return true;
  return false;
}

// Turns every `return e;` into ret/done flag updates so the body falls
// through to its end on all paths. Statements following a possible return
// are guarded by `if (done == 0)`, loop conditions gain `done == 0 &&`.
struct ReturnElim {
  IdGen& gen;
  std::string ret_var;   // empty when the value is discarded (entry function)
  std::string done_var;

  ExprPtr not_done() const {
    return Expr::binary(BinOp::Eq, Expr::var(done_var), Expr::lit(0));
  }

  std::vector<StmtPtr> block(const std::vector<StmtPtr>& body) {
    std::vector<StmtPtr> out;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Stmt& s = *body[i];
      stmt(s, out);
      if (may_return(s) && i + 1 < body.size()) {
        std::vector<StmtPtr> rest(body.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                  body.end());
        auto guard = gen.make(Stmt::Kind::If, s.origin);
        guard->expr = not_done();
        guard->body = block(rest);
        out.push_back(guard);
        return out;
      }
    }
    return out;
  }

  void stmt(const Stmt& s, std::vector<StmtPtr>& out) {
    switch (s.kind) {
      case Stmt::Kind::Return: {
        if (!ret_var.empty()) {
          auto a = gen.make(Stmt::Kind::Assign, s.origin);
          a->name = ret_var;
          a->expr = s.expr ? s.expr : Expr::lit(0);
          out.push_back(a);
        } else if (s.expr) {
          // The value is discarded but the expression still evaluates (it may
          // carry instrumented checks).
          auto a = gen.make(Stmt::Kind::Assign, s.origin);
          a->name = done_var;
          a->expr = Expr::binary(BinOp::Mul, s.expr, Expr::lit(0));
          out.push_back(a);
        }
        auto d = gen.make(Stmt::Kind::Assign, s.origin);
        d->name = done_var;
        d->expr = Expr::lit(1);
        out.push_back(d);
        break;
      }
      case Stmt::Kind::If: {
        auto c = clone(s);
        c->body = block(s.body);
        c->else_body = block(s.else_body);
        out.push_back(c);
        break;
      }
      case Stmt::Kind::While: {
        auto c = clone(s);
        if (may_return(s.body)) c->expr = Expr::binary(BinOp::And, not_done(), s.expr);
        c->body = block(s.body);
        out.push_back(c);
        break;
      }
      case Stmt::Kind::For: {
        auto c = clone(s);
        if (may_return(s.body)) c->expr = Expr::binary(BinOp::And, not_done(), s.expr);
        c->body = block(s.body);
        out.push_back(c);
        break;
      }
      default:
        out.push_back(clone(s));
        break;
    }
  }
};

StmtPtr make_decl(IdGen& gen, StmtId origin, const std::string& name, ExprPtr init) {
  auto d = std::make_shared<Stmt>();
  d->kind = Stmt::Kind::DeclScalar;
  d->origin = origin;
  d->id = gen.fresh(origin);
  d->name = name;
  d->expr = std::move(init);
  return d;
}

}  // namespace

std::string VariantProgram::label() const {
  if (omitted.empty()) return "baseline";
  std::string out;
  for (std::size_t i = 0; i < omitted.labels.size(); ++i) {
    if (i) out += "+";
    out += omitted.labels[i];
  }
  return out;
}

VariantProgram make_variant(const Program& p, FeatureSet omitted, FeatureSet required) {
  FeatureSet features = extract_features(p);
  for (const auto& l : omitted.labels)
    if (!features.contains(l)) throw UnknownFeatureError(l);
  for (const auto& l : required.labels)
    if (!features.contains(l)) throw UnknownFeatureError(l);
  for (const auto& l : omitted.labels)
    if (required.contains(l))
      throw std::invalid_argument("feature both omitted and required: " + l);

  VariantProgram v;
  v.base = p;
  v.omitted = omitted;
  v.required = required;

  Program out = p;
  out.functions.clear();
  IdGen gen{&out};

  std::set<std::string> used = collect_names(p);
  std::vector<std::string> flags;
  for (std::size_t i = 0; i < required.labels.size(); ++i)
    flags.push_back(fresh_name(used, "seen$" + std::to_string(i)));
  v.required_flags = flags;

  auto flag_for = [&](const std::string& label) -> const std::string& {
    for (std::size_t i = 0; i < required.labels.size(); ++i)
      if (required.labels[i] == label) return flags[i];
    throw std::logic_error("flag lookup");
  };

  std::function<std::vector<StmtPtr>(const std::vector<StmtPtr>&)> rewrite =
      [&](const std::vector<StmtPtr>& body) {
        std::vector<StmtPtr> nb;
        for (const auto& sp : body) {
          if (sp->kind == Stmt::Kind::Log) {
            if (omitted.contains(sp->name)) {
              auto a = std::make_shared<Stmt>();
              a->kind = Stmt::Kind::Assume;
              a->id = sp->id;  // takes the log statement's slot
              a->origin = sp->origin;
              a->expr = Expr::lit(0);
              nb.push_back(a);
            } else if (required.contains(sp->name)) {
              auto a = std::make_shared<Stmt>();
              a->kind = Stmt::Kind::Assign;
              a->id = sp->id;
              a->origin = sp->origin;
              a->name = flag_for(sp->name);
              a->expr = Expr::lit(1);
              nb.push_back(a);
            }
            // other logs are deleted
            continue;
          }
          if (sp->body.empty() && sp->else_body.empty()) {
            nb.push_back(sp);
            continue;
          }
          auto c = clone(*sp);
          c->body = rewrite(sp->body);
          c->else_body = rewrite(sp->else_body);
          nb.push_back(c);
        }
        return nb;
      };

  for (const auto& fn : p.functions) {
    FunctionDef nf = fn;
    nf.body = rewrite(fn.body);
    out.functions.push_back(std::move(nf));
  }

  if (!required.empty()) {
    for (const auto& flag : flags) {
      GlobalDecl g;
      g.name = flag;
      g.id = gen.fresh(0);
      out.globals.push_back(g);
    }
    for (auto& fn : out.functions) {
      if (fn.name != out.entry) continue;
      if (may_return(fn.body)) {
        std::string done = fresh_name(used, out.entry + "$done");
        ReturnElim elim{gen, "", done};
        std::vector<StmtPtr> nb;
        nb.push_back(make_decl(gen, 0, done, Expr::lit(0)));
        for (auto& s : elim.block(fn.body)) nb.push_back(s);
        fn.body = std::move(nb);
      }
      ExprPtr all_seen;
      for (const auto& flag : flags) {
        ExprPtr f = Expr::var(flag);
        all_seen = all_seen ? Expr::binary(BinOp::And, all_seen, f) : f;
      }
      auto a = std::make_shared<Stmt>();
      a->kind = Stmt::Kind::Assume;
      a->origin = 0;
      a->id = gen.fresh(0);
      out.source_map[a->id] = fn.end_loc;
      a->origin = a->id;
      a->expr = all_seen;
      fn.body.push_back(a);
    }
  }

  v.program = std::move(out);
  return v;
}

VariantProgram omit_features(const Program& p, FeatureSet omitted) {
  return make_variant(p, std::move(omitted), FeatureSet{});
}

VariantProgram require_features(const Program& p, FeatureSet required) {
  return make_variant(p, FeatureSet{}, std::move(required));
}

namespace {

struct Inliner {
  const Program& src;
  Program* out;
  IdGen gen;
  std::set<std::string> used;
  int instance = 0;

  std::vector<StmtPtr> expand_block(const std::vector<StmtPtr>& body) {
    std::vector<StmtPtr> nb;
    for (const auto& sp : body) {
      if (sp->kind == Stmt::Kind::Call) {
        expand_call(*sp, nb);
        continue;
      }
      if (sp->body.empty() && sp->else_body.empty() && !sp->init && !sp->step) {
        nb.push_back(sp);
        continue;
      }
      auto c = clone(*sp);
      c->body = expand_block(sp->body);
      c->else_body = expand_block(sp->else_body);
      nb.push_back(c);
    }
    return nb;
  }

  void expand_call(const Stmt& call, std::vector<StmtPtr>& out_body) {
    const FunctionDef* callee = src.find_function(call.name);
    if (!callee) throw std::logic_error("inline: unknown function " + call.name);
    int n = ++instance;
    std::string prefix = call.name + "$" + std::to_string(n) + "$";

    // One flat rename map per instance; names within a function are unique.
    std::map<std::string, std::string> rename;
    for (const auto& param : callee->params)
      rename[param] = fresh_name(used, prefix + param);
    std::function<void(const std::vector<StmtPtr>&)> collect =
        [&](const std::vector<StmtPtr>& body) {
          for (const auto& s : body) {
            if (s->kind == Stmt::Kind::DeclScalar && !rename.count(s->name))
              rename[s->name] = fresh_name(used, prefix + s->name);
            if (s->init) collect({s->init});
            collect(s->body);
            collect(s->else_body);
            if (s->step) collect({s->step});
          }
        };
    collect(callee->body);

    std::string ret_var = fresh_name(used, prefix + "ret");
    std::string done_var = fresh_name(used, prefix + "done");

    // Bind parameters by value at the call site.
    for (std::size_t i = 0; i < callee->params.size(); ++i)
      out_body.push_back(
          make_decl(gen, call.origin, rename[callee->params[i]], call.args[i]));
    out_body.push_back(make_decl(gen, call.origin, ret_var, Expr::lit(0)));
    out_body.push_back(make_decl(gen, call.origin, done_var, Expr::lit(0)));

    std::vector<StmtPtr> renamed = rename_block(callee->body, rename);
    ReturnElim elim{gen, ret_var, done_var};
    std::vector<StmtPtr> flat = elim.block(renamed);
    for (auto& s : expand_block(flat)) out_body.push_back(s);

    if (!call.target.empty()) {
      auto a = std::make_shared<Stmt>();
      a->kind = Stmt::Kind::Assign;
      a->origin = call.origin;
      a->id = gen.fresh(call.origin);
      a->name = call.target;
      a->expr = Expr::var(ret_var);
      out_body.push_back(a);
    }
  }

  ExprPtr rename_expr(const ExprPtr& e, const std::map<std::string, std::string>& rename) {
    if (!e) return e;
    switch (e->kind) {
      case Expr::Kind::Int:
        return e;
      case Expr::Kind::Var: {
        auto it = rename.find(e->name);
        return it == rename.end() ? e : Expr::var(it->second);
      }
      case Expr::Kind::Index: {
        auto it = rename.find(e->name);
        ExprPtr idx = rename_expr(e->lhs, rename);
        return Expr::index(it == rename.end() ? e->name : it->second, idx);
      }
      case Expr::Kind::Unary:
        return Expr::unary(e->un, rename_expr(e->lhs, rename));
      case Expr::Kind::Binary:
        return Expr::binary(e->bin, rename_expr(e->lhs, rename), rename_expr(e->rhs, rename));
    }
    return e;
  }

  StmtPtr rename_stmt(const StmtPtr& sp, const std::map<std::string, std::string>& rename) {
    auto s = clone(*sp);
    s->id = gen.fresh(sp->origin);
    auto mapped = [&](const std::string& name) {
      auto it = rename.find(name);
      return it == rename.end() ? name : it->second;
    };
    switch (s->kind) {
      case Stmt::Kind::DeclScalar:
      case Stmt::Kind::Assign:
      case Stmt::Kind::Havoc:
      case Stmt::Kind::Store:
        s->name = mapped(sp->name);
        break;
      case Stmt::Kind::Call:
        if (!sp->target.empty()) s->target = mapped(sp->target);
        break;
      default:
        break;
    }
    s->expr = rename_expr(sp->expr, rename);
    s->value = rename_expr(sp->value, rename);
    s->args.clear();
    for (const auto& a : sp->args) s->args.push_back(rename_expr(a, rename));
    s->body = rename_block(sp->body, rename);
    s->else_body = rename_block(sp->else_body, rename);
    if (sp->init) s->init = rename_stmt(sp->init, rename);
    if (sp->step) s->step = rename_stmt(sp->step, rename);
    return s;
  }

  std::vector<StmtPtr> rename_block(const std::vector<StmtPtr>& body,
                                    const std::map<std::string, std::string>& rename) {
    std::vector<StmtPtr> out_body;
    out_body.reserve(body.size());
    for (const auto& s : body) out_body.push_back(rename_stmt(s, rename));
    return out_body;
  }
};

}  // namespace

Program inline_calls(const Program& p) {
  Program out = p;
  Inliner inliner{p, &out, IdGen{&out}, collect_names(p), 0};

  for (auto& fn : out.functions) {
    if (fn.name != out.entry) continue;
    std::vector<StmtPtr> body = inliner.expand_block(fn.body);
    if (may_return(body)) {
      std::string done = fresh_name(inliner.used, out.entry + "$done");
      ReturnElim elim{inliner.gen, "", done};
      std::vector<StmtPtr> nb;
      nb.push_back(make_decl(inliner.gen, 0, done, Expr::lit(0)));
      for (auto& s : elim.block(body)) nb.push_back(s);
      body = std::move(nb);
    }
    fn.body = std::move(body);
  }
  return out;
}

namespace {

struct Unroller {
  IdGen gen;
  unsigned k;

  std::vector<StmtPtr> walk(const std::vector<StmtPtr>& body) {
    std::vector<StmtPtr> out;
    for (const auto& sp : body) {
      switch (sp->kind) {
        case Stmt::Kind::While: {
          std::vector<StmtPtr> inner = walk(sp->body);
          auto nest = expand(*sp, sp->expr, inner, nullptr, k);
          for (auto& s : nest) out.push_back(s);
          break;
        }
        case Stmt::Kind::For: {
          if (sp->init) out.push_back(sp->init);
          std::vector<StmtPtr> inner = walk(sp->body);
          auto nest = expand(*sp, sp->expr, inner, sp->step, k);
          for (auto& s : nest) out.push_back(s);
          break;
        }
        case Stmt::Kind::If: {
          auto c = clone(*sp);
          c->body = walk(sp->body);
          c->else_body = walk(sp->else_body);
          out.push_back(c);
          break;
        }
        default:
          out.push_back(sp);
          break;
      }
    }
    return out;
  }

  // k nested guarded copies, unwinding assumption innermost.
  std::vector<StmtPtr> expand(const Stmt& loop, const ExprPtr& cond,
                              const std::vector<StmtPtr>& body, const StmtPtr& step,
                              unsigned remaining) {
    if (remaining == 0) {
      auto a = std::make_shared<Stmt>();
      a->kind = Stmt::Kind::Assume;
      a->origin = loop.origin;
      a->id = gen.fresh(loop.origin);
      a->expr = Expr::unary(UnOp::Not, cond);
      return {a};
    }
    auto guard = std::make_shared<Stmt>();
    guard->kind = Stmt::Kind::If;
    guard->origin = loop.origin;
    guard->id = gen.fresh(loop.origin);
    guard->expr = cond;
    guard->body = copy_fresh(body, gen);
    if (step) guard->body.push_back(copy_fresh(step, gen));
    auto rest = expand(loop, cond, body, step, remaining - 1);
    for (auto& s : rest) guard->body.push_back(s);
    return {guard};
  }
};

}  // namespace

Program unroll(const Program& p, unsigned k) {
  if (k < 1) throw std::invalid_argument("unwind bound must be >= 1");
  Program out = p;
  Unroller u{IdGen{&out}, k};
  for (auto& fn : out.functions) {
    if (fn.name != out.entry) continue;
    fn.body = u.walk(fn.body);
  }
  return out;
}

}  // namespace swarmbmc
