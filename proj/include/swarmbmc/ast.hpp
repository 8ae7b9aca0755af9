#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "swarmbmc/util.hpp"

namespace swarmbmc {

using StmtId = std::uint32_t;

struct SourceLoc {
  int line = 0;
  int col = 0;
};

enum class UnOp { Neg, Not };

enum class BinOp { Add, Sub, Mul, Div, Rem, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* binop_text(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expressions are immutable and freely shared between program versions.
struct Expr {
  enum class Kind { Int, Var, Index, Unary, Binary };

  Kind kind;
  i64 value = 0;     // Int
  std::string name;  // Var, Index (array name)
  UnOp un{};
  BinOp bin{};
  ExprPtr lhs;  // Unary operand, Index subscript, Binary lhs
  ExprPtr rhs;  // Binary rhs

  static ExprPtr lit(i64 v);
  static ExprPtr var(std::string name);
  static ExprPtr index(std::string array, ExprPtr subscript);
  static ExprPtr unary(UnOp op, ExprPtr e);
  static ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b);
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

// One statement node. `id` is unique within a Program; `origin` points at the
// statement in the original user program this node descends from (transforms
// keep the chain so counterexamples always name user-visible locations).
struct Stmt {
  enum class Kind {
    DeclScalar,  // int x;  /  int x = e;     (expr optional)
    Assign,      // x = e;
    Store,       // a[e] = e2;                (expr index, value stored)
    If,          // if (e) body else else_body
    While,       // while (e) body
    For,         // for (init; e; step) body
    Call,        // f(args);  /  x = f(args); (target optional)
    Return,      // return e;  /  return;
    Assert,      // assert(e);
    Assume,      // assume(e);
    Log,         // log("label");             (name = label)
    Havoc,       // x = havoc();              (name = x)
  };

  Kind kind;
  StmtId id = 0;
  StmtId origin = 0;
  std::string name;
  ExprPtr expr;
  ExprPtr value;              // Store value
  std::vector<ExprPtr> args;  // Call arguments
  std::string target;         // Call result variable, empty if discarded
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  StmtPtr init;  // For
  StmtPtr step;  // For
};

struct GlobalDecl {
  std::string name;
  i64 array_size = -1;  // -1 = scalar
  StmtId id = 0;
  bool is_array() const { return array_size >= 0; }
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<StmtPtr> body;
  SourceLoc loc;
  SourceLoc end_loc;
};

struct Program {
  std::string file = "<memory>";
  std::vector<GlobalDecl> globals;
  std::vector<FunctionDef> functions;
  std::string entry = "main";
  std::unordered_map<StmtId, SourceLoc> source_map;
  StmtId next_id = 1;

  const FunctionDef* find_function(const std::string& name) const;
  const FunctionDef& entry_function() const;
  const GlobalDecl* find_global(const std::string& name) const;
  SourceLoc loc_of(StmtId id) const;
};

// Ordered, deduplicated set of log labels (lexicographic).
struct FeatureSet {
  std::vector<std::string> labels;

  static FeatureSet of(std::vector<std::string> raw);
  bool contains(const std::string& label) const;
  bool subset_of(const FeatureSet& other) const;
  bool empty() const { return labels.empty(); }
  std::size_t size() const { return labels.size(); }
  bool operator==(const FeatureSet& other) const { return labels == other.labels; }
};

// Structural equality modulo statement ids and source locations; this is the
// relation under which pretty-print + re-parse round-trips.
bool struct_eq(const Program& a, const Program& b);
bool struct_eq(const Expr& a, const Expr& b);

}  // namespace swarmbmc
