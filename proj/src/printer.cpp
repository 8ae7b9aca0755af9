#include <sstream>

#include "swarmbmc/frontend.hpp"

namespace swarmbmc {

namespace {

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Unary) return 7;
  if (e.kind != Expr::Kind::Binary) return 8;
  switch (e.bin) {
    case BinOp::Mul: case BinOp::Div: case BinOp::Rem: return 6;
    case BinOp::Add: case BinOp::Sub: return 5;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 4;
    case BinOp::Eq: case BinOp::Ne: return 3;
    case BinOp::And: return 2;
    case BinOp::Or: return 1;
  }
  return 8;
}

void print_expr(std::ostream& os, const Expr& e, int parent_prec, bool rhs_of_parent) {
  int prec = precedence(e);
  bool parens = prec < parent_prec || (prec == parent_prec && rhs_of_parent);
  if (parens) os << '(';
  switch (e.kind) {
    case Expr::Kind::Int:
      os << e.value;
      break;
    case Expr::Kind::Var:
      os << e.name;
      break;
    case Expr::Kind::Index:
      os << e.name << '[';
      print_expr(os, *e.lhs, 0, false);
      os << ']';
      break;
    case Expr::Kind::Unary:
      os << (e.un == UnOp::Neg ? '-' : '!');
      print_expr(os, *e.lhs, prec, false);
      break;
    case Expr::Kind::Binary:
      print_expr(os, *e.lhs, prec, false);
      os << ' ' << binop_text(e.bin) << ' ';
      print_expr(os, *e.rhs, prec, true);
      break;
  }
  if (parens) os << ')';
}

struct Printer {
  std::ostream& os;
  int depth = 0;

  void indent() {
    for (int i = 0; i < depth; ++i) os << "  ";
  }

  void expr(const Expr& e) { print_expr(os, e, 0, false); }

  // Assignment-shaped statements without the trailing semicolon (for-headers).
  void simple(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::DeclScalar:
        os << "int " << s.name;
        if (s.expr) {
          os << " = ";
          expr(*s.expr);
        }
        break;
      case Stmt::Kind::Assign:
        os << s.name << " = ";
        expr(*s.expr);
        break;
      case Stmt::Kind::Havoc:
        os << s.name << " = havoc()";
        break;
      case Stmt::Kind::Store:
        os << s.name << '[';
        expr(*s.expr);
        os << "] = ";
        expr(*s.value);
        break;
      case Stmt::Kind::Call:
        if (!s.target.empty()) os << s.target << " = ";
        os << s.name << '(';
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          if (i) os << ", ";
          expr(*s.args[i]);
        }
        os << ')';
        break;
      default:
        os << "/* unprintable */";
        break;
    }
  }

  void block(const std::vector<StmtPtr>& body) {
    os << "{\n";
    ++depth;
    for (const auto& s : body) stmt(*s);
    --depth;
    indent();
    os << "}";
  }

  void stmt(const Stmt& s) {
    indent();
    switch (s.kind) {
      case Stmt::Kind::DeclScalar:
      case Stmt::Kind::Assign:
      case Stmt::Kind::Havoc:
      case Stmt::Kind::Store:
      case Stmt::Kind::Call:
        simple(s);
        os << ";\n";
        break;
      case Stmt::Kind::If:
        os << "if (";
        expr(*s.expr);
        os << ") ";
        block(s.body);
        if (!s.else_body.empty()) {
          os << " else ";
          block(s.else_body);
        }
        os << "\n";
        break;
      case Stmt::Kind::While:
        os << "while (";
        expr(*s.expr);
        os << ") ";
        block(s.body);
        os << "\n";
        break;
      case Stmt::Kind::For:
        os << "for (";
        if (s.init) simple(*s.init);
        os << "; ";
        expr(*s.expr);
        os << "; ";
        if (s.step) simple(*s.step);
        os << ") ";
        block(s.body);
        os << "\n";
        break;
      case Stmt::Kind::Return:
        os << "return";
        if (s.expr) {
          os << ' ';
          expr(*s.expr);
        }
        os << ";\n";
        break;
      case Stmt::Kind::Assert:
        os << "assert(";
        expr(*s.expr);
        os << ");\n";
        break;
      case Stmt::Kind::Assume:
        os << "assume(";
        expr(*s.expr);
        os << ");\n";
        break;
      case Stmt::Kind::Log:
        os << "log(\"" << s.name << "\");\n";
        break;
    }
  }
};

}  // namespace

std::string pretty(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0, false);
  return os.str();
}

std::string pretty(const Program& p) {
  std::ostringstream os;
  Printer pr{os};
  for (const auto& g : p.globals) {
    os << "int " << g.name;
    if (g.array_size != -1) os << '[' << g.array_size << ']';
    os << ";\n";
  }
  if (!p.globals.empty()) os << "\n";
  for (std::size_t i = 0; i < p.functions.size(); ++i) {
    const auto& fn = p.functions[i];
    os << "func " << fn.name << '(';
    for (std::size_t j = 0; j < fn.params.size(); ++j) {
      if (j) os << ", ";
      os << "int " << fn.params[j];
    }
    os << ") ";
    pr.block(fn.body);
    os << "\n";
    if (i + 1 < p.functions.size()) os << "\n";
  }
  return os.str();
}

}  // namespace swarmbmc
