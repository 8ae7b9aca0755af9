#include "swarmbmc/ast.hpp"

#include <algorithm>
#include <sstream>

namespace swarmbmc {

std::string to_hex(u64 v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Rem: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

ExprPtr Expr::lit(i64 v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Int;
  e->value = v;
  return e;
}

ExprPtr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::index(std::string array, ExprPtr subscript) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Index;
  e->name = std::move(array);
  e->lhs = std::move(subscript);
  return e;
}

ExprPtr Expr::unary(UnOp op, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Unary;
  e->un = op;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr Expr::binary(BinOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Binary;
  e->bin = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

const FunctionDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const FunctionDef& Program::entry_function() const {
  const FunctionDef* f = find_function(entry);
  if (!f) throw std::logic_error("program has no entry function");
  return *f;
}

const GlobalDecl* Program::find_global(const std::string& name) const {
  for (const auto& g : globals)
    if (g.name == name) return &g;
  return nullptr;
}

SourceLoc Program::loc_of(StmtId id) const {
  auto it = source_map.find(id);
  return it == source_map.end() ? SourceLoc{} : it->second;
}

FeatureSet FeatureSet::of(std::vector<std::string> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  FeatureSet fs;
  fs.labels = std::move(raw);
  return fs;
}

bool FeatureSet::contains(const std::string& label) const {
  return std::binary_search(labels.begin(), labels.end(), label);
}

bool FeatureSet::subset_of(const FeatureSet& other) const {
  for (const auto& l : labels)
    if (!other.contains(l)) return false;
  return true;
}

bool struct_eq(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Int: return a.value == b.value;
    case Expr::Kind::Var: return a.name == b.name;
    case Expr::Kind::Index: return a.name == b.name && struct_eq(*a.lhs, *b.lhs);
    case Expr::Kind::Unary: return a.un == b.un && struct_eq(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.bin == b.bin && struct_eq(*a.lhs, *b.lhs) && struct_eq(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return struct_eq(*a, *b);
}

bool stmt_eq(const StmtPtr& a, const StmtPtr& b);

bool block_eq(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!stmt_eq(a[i], b[i])) return false;
  return true;
}

bool stmt_eq(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->name != b->name || a->target != b->target) return false;
  if (!expr_eq(a->expr, b->expr) || !expr_eq(a->value, b->value)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!expr_eq(a->args[i], b->args[i])) return false;
  return block_eq(a->body, b->body) && block_eq(a->else_body, b->else_body) &&
         stmt_eq(a->init, b->init) && stmt_eq(a->step, b->step);
}

}  // namespace

bool struct_eq(const Program& a, const Program& b) {
  if (a.globals.size() != b.globals.size() || a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.globals.size(); ++i) {
    if (a.globals[i].name != b.globals[i].name ||
        a.globals[i].array_size != b.globals[i].array_size)
      return false;
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.params != fb.params) return false;
    if (!block_eq(fa.body, fb.body)) return false;
  }
  return a.entry == b.entry;
}

}  // namespace swarmbmc
