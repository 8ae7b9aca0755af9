#include <functional>
#include <map>
#include <set>

#include "swarmbmc/frontend.hpp"

namespace swarmbmc {

namespace {

struct Checker {
  const Program& p;
  std::vector<SemanticError>& errors;

  void err(SemanticErrorKind kind, StmtId stmt, std::string msg) {
    errors.push_back({kind, stmt, std::move(msg)});
  }

  enum class Sym { Scalar, Array };
  using Scope = std::map<std::string, Sym>;
  std::vector<Scope> scopes;

  const Sym* lookup(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  bool declare(const std::string& name, Sym sym, StmtId at) {
    if (lookup(name)) {
      err(SemanticErrorKind::Redeclaration, at, "'" + name + "' is already declared");
      return false;
    }
    scopes.back()[name] = sym;
    return true;
  }

  void check_expr(const Expr& e, StmtId at) {
    switch (e.kind) {
      case Expr::Kind::Int:
        break;
      case Expr::Kind::Var: {
        const Sym* s = lookup(e.name);
        if (!s) err(SemanticErrorKind::UseBeforeDecl, at, "'" + e.name + "' is not declared");
        else if (*s == Sym::Array)
          err(SemanticErrorKind::NotAScalar, at, "array '" + e.name + "' used without subscript");
        break;
      }
      case Expr::Kind::Index: {
        const Sym* s = lookup(e.name);
        if (!s) err(SemanticErrorKind::UseBeforeDecl, at, "'" + e.name + "' is not declared");
        else if (*s != Sym::Array)
          err(SemanticErrorKind::NotAnArray, at, "'" + e.name + "' is not an array");
        check_expr(*e.lhs, at);
        break;
      }
      case Expr::Kind::Unary:
        check_expr(*e.lhs, at);
        break;
      case Expr::Kind::Binary:
        check_expr(*e.lhs, at);
        check_expr(*e.rhs, at);
        break;
    }
  }

  void check_scalar_target(const std::string& name, StmtId at) {
    const Sym* s = lookup(name);
    if (!s) err(SemanticErrorKind::UseBeforeDecl, at, "'" + name + "' is not declared");
    else if (*s == Sym::Array)
      err(SemanticErrorKind::NotAScalar, at, "cannot assign to array '" + name + "' without subscript");
  }

  void check_call(const Stmt& s) {
    const FunctionDef* callee = p.find_function(s.name);
    if (!callee) {
      err(SemanticErrorKind::UnknownFunction, s.id, "call to unknown function '" + s.name + "'");
    } else if (callee->params.size() != s.args.size()) {
      err(SemanticErrorKind::ArityMismatch, s.id,
          "'" + s.name + "' expects " + std::to_string(callee->params.size()) +
              " argument(s), got " + std::to_string(s.args.size()));
    }
    for (const auto& a : s.args) check_expr(*a, s.id);
    if (!s.target.empty()) check_scalar_target(s.target, s.id);
  }

  void check_block(const std::vector<StmtPtr>& body) {
    scopes.emplace_back();
    for (const auto& sp : body) check_stmt(*sp);
    scopes.pop_back();
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::DeclScalar:
        if (s.expr) check_expr(*s.expr, s.id);
        declare(s.name, Sym::Scalar, s.id);
        break;
      case Stmt::Kind::Assign:
        check_expr(*s.expr, s.id);
        check_scalar_target(s.name, s.id);
        break;
      case Stmt::Kind::Havoc:
        check_scalar_target(s.name, s.id);
        break;
      case Stmt::Kind::Store: {
        const Sym* sym = lookup(s.name);
        if (!sym) err(SemanticErrorKind::UseBeforeDecl, s.id, "'" + s.name + "' is not declared");
        else if (*sym != Sym::Array)
          err(SemanticErrorKind::NotAnArray, s.id, "'" + s.name + "' is not an array");
        check_expr(*s.expr, s.id);
        check_expr(*s.value, s.id);
        break;
      }
      case Stmt::Kind::If:
        check_expr(*s.expr, s.id);
        check_block(s.body);
        check_block(s.else_body);
        break;
      case Stmt::Kind::While:
        check_expr(*s.expr, s.id);
        check_block(s.body);
        break;
      case Stmt::Kind::For: {
        scopes.emplace_back();  // for-init scope spans cond/step/body
        if (s.init) check_stmt(*s.init);
        check_expr(*s.expr, s.id);
        check_block(s.body);
        if (s.step) check_stmt(*s.step);
        scopes.pop_back();
        break;
      }
      case Stmt::Kind::Call:
        check_call(s);
        break;
      case Stmt::Kind::Return:
        if (s.expr) check_expr(*s.expr, s.id);
        break;
      case Stmt::Kind::Assert:
      case Stmt::Kind::Assume:
        check_expr(*s.expr, s.id);
        break;
      case Stmt::Kind::Log:
        if (s.name.empty())
          err(SemanticErrorKind::EmptyLogLabel, s.id, "log label must be non-empty");
        break;
    }
  }
};

void check_recursion(const Program& p, std::vector<SemanticError>& errors) {
  // Colors: 0 unvisited, 1 on stack, 2 done.
  std::map<std::string, int> color;
  std::function<void(const FunctionDef&)> visit = [&](const FunctionDef& fn) {
    color[fn.name] = 1;
    std::function<void(const std::vector<StmtPtr>&)> walk =
        [&](const std::vector<StmtPtr>& body) {
          for (const auto& sp : body) {
            const Stmt& s = *sp;
            if (s.kind == Stmt::Kind::Call) {
              const FunctionDef* callee = p.find_function(s.name);
              if (callee) {
                int c = color[callee->name];
                if (c == 1) {
                  errors.push_back({SemanticErrorKind::Recursion, s.id,
                                    "recursive call involving '" + callee->name + "'"});
                } else if (c == 0) {
                  visit(*callee);
                }
              }
            }
            walk(s.body);
            walk(s.else_body);
            if (s.init) walk({s.init});
            if (s.step) walk({s.step});
          }
        };
    walk(fn.body);
    color[fn.name] = 2;
  };
  for (const auto& fn : p.functions)
    if (color[fn.name] == 0) visit(fn);
}

}  // namespace

std::vector<SemanticError> validate(const Program& p) {
  std::vector<SemanticError> errors;
  Checker c{p, errors, {}};

  std::set<std::string> fn_names;
  for (const auto& fn : p.functions) {
    if (!fn_names.insert(fn.name).second)
      c.err(SemanticErrorKind::DuplicateFunction, 0, "duplicate function '" + fn.name + "'");
  }

  const FunctionDef* entry = p.find_function(p.entry);
  if (!entry)
    c.err(SemanticErrorKind::MissingEntry, 0, "no entry function '" + p.entry + "'");
  else if (!entry->params.empty())
    c.err(SemanticErrorKind::EntryHasParams, 0, "entry function must take no parameters");

  check_recursion(p, errors);

  c.scopes.emplace_back();
  for (const auto& g : p.globals) {
    bool declared_as_array = g.array_size != -1;
    if (declared_as_array && g.array_size <= 0) {
      c.err(SemanticErrorKind::NonConstArraySize, g.id,
            "array '" + g.name + "' needs a constant positive size");
    }
    c.declare(g.name, declared_as_array ? Checker::Sym::Array : Checker::Sym::Scalar, g.id);
  }

  for (const auto& fn : p.functions) {
    c.scopes.emplace_back();
    for (const auto& param : fn.params) c.declare(param, Checker::Sym::Scalar, 0);
    c.check_block(fn.body);
    c.scopes.pop_back();
  }
  c.scopes.pop_back();

  return errors;
}

FeatureSet extract_features(const Program& p) {
  std::vector<std::string> labels;
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& sp : body) {
      if (sp->kind == Stmt::Kind::Log) labels.push_back(sp->name);
      walk(sp->body);
      walk(sp->else_body);
      if (sp->init) walk({sp->init});
      if (sp->step) walk({sp->step});
    }
  };
  for (const auto& fn : p.functions) walk(fn.body);
  return FeatureSet::of(std::move(labels));
}

}  // namespace swarmbmc
