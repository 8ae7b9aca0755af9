#include <cctype>
#include <memory>
#include <utility>

#include "swarmbmc/frontend.hpp"

namespace swarmbmc {

namespace {

enum class Tok {
  End, Ident, Int, String,
  KwInt, KwFunc, KwIf, KwElse, KwWhile, KwFor, KwAssert, KwAssume, KwLog,
  KwHavoc, KwReturn,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Semi, Comma, Assign,
  Plus, Minus, Star, Slash, Percent,
  Lt, Le, Gt, Ge, EqEq, NotEq, AndAnd, OrOr, Bang,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  i64 value = 0;
  int line = 1;
  int col = 1;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer literal";
    case Tok::String: return "string literal";
    case Tok::KwInt: return "'int'";
    case Tok::KwFunc: return "'func'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwFor: return "'for'";
    case Tok::KwAssert: return "'assert'";
    case Tok::KwAssume: return "'assume'";
    case Tok::KwLog: return "'log'";
    case Tok::KwHavoc: return "'havoc'";
    case Tok::KwReturn: return "'return'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '$') {
          word.push_back(d);
          advance();
        } else {
          break;
        }
      }
      t.kind = keyword(word);
      t.text = std::move(word);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      u64 v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        u64 digit = static_cast<u64>(src_[pos_] - '0');
        if (v > (0x7fffffffffffffffull - digit) / 10)
          throw ParseError("integer literal too large", line_, col_);
        v = v * 10 + digit;
        advance();
      }
      t.kind = Tok::Int;
      t.value = static_cast<i64>(v);
      return t;
    }
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
        s.push_back(src_[pos_]);
        advance();
      }
      if (pos_ >= src_.size() || src_[pos_] != '"')
        throw ParseError("unterminated string literal", t.line, t.col);
      advance();
      t.kind = Tok::String;
      t.text = std::move(s);
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case '[': t.kind = Tok::LBracket; return t;
      case ']': t.kind = Tok::RBracket; return t;
      case ';': t.kind = Tok::Semi; return t;
      case ',': t.kind = Tok::Comma; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '-': t.kind = Tok::Minus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '/': t.kind = Tok::Slash; return t;
      case '%': t.kind = Tok::Percent; return t;
      case '<': t.kind = eat('=') ? Tok::Le : Tok::Lt; return t;
      case '>': t.kind = eat('=') ? Tok::Ge : Tok::Gt; return t;
      case '=': t.kind = eat('=') ? Tok::EqEq : Tok::Assign; return t;
      case '!': t.kind = eat('=') ? Tok::NotEq : Tok::Bang; return t;
      case '&':
        if (eat('&')) { t.kind = Tok::AndAnd; return t; }
        throw ParseError("stray '&' (did you mean '&&'?)", t.line, t.col);
      case '|':
        if (eat('|')) { t.kind = Tok::OrOr; return t; }
        throw ParseError("stray '|' (did you mean '||'?)", t.line, t.col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "int") return Tok::KwInt;
    if (w == "func") return Tok::KwFunc;
    if (w == "if") return Tok::KwIf;
    if (w == "else") return Tok::KwElse;
    if (w == "while") return Tok::KwWhile;
    if (w == "for") return Tok::KwFor;
    if (w == "assert") return Tok::KwAssert;
    if (w == "assume") return Tok::KwAssume;
    if (w == "log") return Tok::KwLog;
    if (w == "havoc") return Tok::KwHavoc;
    if (w == "return") return Tok::KwReturn;
    return Tok::Ident;
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& src, std::string file) : lex_(src) {
    prog_.file = std::move(file);
    cur_ = lex_.next();
  }

  Program run() {
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::KwInt) {
        parse_global();
      } else if (cur_.kind == Tok::KwFunc) {
        parse_function();
      } else {
        fail("'int' or 'func'");
      }
    }
    return std::move(prog_);
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected + ", found " + tok_name(cur_.kind),
                     cur_.line, cur_.col, expected);
  }

  Token expect(Tok kind) {
    if (cur_.kind != kind) fail(tok_name(kind));
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    cur_ = lex_.next();
    return true;
  }

  StmtId fresh_id(SourceLoc loc) {
    StmtId id = prog_.next_id++;
    prog_.source_map[id] = loc;
    return id;
  }

  std::shared_ptr<Stmt> make_stmt(Stmt::Kind kind, SourceLoc loc) {
    auto s = std::make_shared<Stmt>();
    s->kind = kind;
    s->id = fresh_id(loc);
    s->origin = s->id;
    return s;
  }

  SourceLoc here() const { return SourceLoc{cur_.line, cur_.col}; }

  void parse_global() {
    SourceLoc loc = here();
    expect(Tok::KwInt);
    Token name = expect(Tok::Ident);
    GlobalDecl g;
    g.name = name.text;
    g.id = fresh_id(loc);
    if (accept(Tok::LBracket)) {
      // Size must be a literal constant; validate() reports anything else.
      if (cur_.kind == Tok::Int) {
        g.array_size = cur_.value;
        cur_ = lex_.next();
      } else if (cur_.kind == Tok::Ident) {
        g.array_size = -2;  // marker: non-constant size, rejected by validate
        cur_ = lex_.next();
      } else {
        fail("array size");
      }
      expect(Tok::RBracket);
    }
    expect(Tok::Semi);
    prog_.globals.push_back(std::move(g));
  }

  void parse_function() {
    SourceLoc loc = here();
    expect(Tok::KwFunc);
    Token name = expect(Tok::Ident);
    FunctionDef fn;
    fn.name = name.text;
    fn.loc = loc;
    expect(Tok::LParen);
    if (!accept(Tok::RParen)) {
      do {
        expect(Tok::KwInt);
        fn.params.push_back(expect(Tok::Ident).text);
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    fn.body = parse_block();
    fn.end_loc = prev_rbrace_;
    prog_.functions.push_back(std::move(fn));
  }

  std::vector<StmtPtr> parse_block() {
    expect(Tok::LBrace);
    std::vector<StmtPtr> body;
    while (cur_.kind != Tok::RBrace) {
      if (cur_.kind == Tok::End) fail("'}'");
      body.push_back(parse_stmt());
    }
    prev_rbrace_ = here();
    expect(Tok::RBrace);
    return body;
  }

  StmtPtr parse_stmt() {
    SourceLoc loc = here();
    switch (cur_.kind) {
      case Tok::KwInt: {
        cur_ = lex_.next();
        Token name = expect(Tok::Ident);
        auto s = make_stmt(Stmt::Kind::DeclScalar, loc);
        s->name = name.text;
        if (accept(Tok::Assign)) s->expr = parse_expr();
        expect(Tok::Semi);
        return s;
      }
      case Tok::KwIf: {
        cur_ = lex_.next();
        expect(Tok::LParen);
        auto s = make_stmt(Stmt::Kind::If, loc);
        s->expr = parse_expr();
        expect(Tok::RParen);
        s->body = parse_block();
        if (accept(Tok::KwElse)) s->else_body = parse_block();
        return s;
      }
      case Tok::KwWhile: {
        cur_ = lex_.next();
        expect(Tok::LParen);
        auto s = make_stmt(Stmt::Kind::While, loc);
        s->expr = parse_expr();
        expect(Tok::RParen);
        s->body = parse_block();
        return s;
      }
      case Tok::KwFor: {
        cur_ = lex_.next();
        expect(Tok::LParen);
        auto s = make_stmt(Stmt::Kind::For, loc);
        if (cur_.kind != Tok::Semi) s->init = parse_simple_stmt(here());
        expect(Tok::Semi);
        s->expr = parse_expr();
        expect(Tok::Semi);
        if (cur_.kind != Tok::RParen) s->step = parse_simple_stmt(here());
        expect(Tok::RParen);
        s->body = parse_block();
        return s;
      }
      case Tok::KwAssert:
      case Tok::KwAssume: {
        bool is_assert = cur_.kind == Tok::KwAssert;
        cur_ = lex_.next();
        expect(Tok::LParen);
        auto s = make_stmt(is_assert ? Stmt::Kind::Assert : Stmt::Kind::Assume, loc);
        s->expr = parse_expr();
        expect(Tok::RParen);
        expect(Tok::Semi);
        return s;
      }
      case Tok::KwLog: {
        cur_ = lex_.next();
        expect(Tok::LParen);
        Token label = expect(Tok::String);
        expect(Tok::RParen);
        expect(Tok::Semi);
        auto s = make_stmt(Stmt::Kind::Log, loc);
        s->name = label.text;
        return s;
      }
      case Tok::KwReturn: {
        cur_ = lex_.next();
        auto s = make_stmt(Stmt::Kind::Return, loc);
        if (cur_.kind != Tok::Semi) s->expr = parse_expr();
        expect(Tok::Semi);
        return s;
      }
      case Tok::Ident: {
        auto s = parse_simple_stmt(loc);
        expect(Tok::Semi);
        return s;
      }
      default:
        fail("a statement");
    }
  }

  // Assignment, array store, havoc, or call; shared with for-init/step.
  StmtPtr parse_simple_stmt(SourceLoc loc) {
    if (cur_.kind == Tok::KwInt) {
      // for-init declaration
      cur_ = lex_.next();
      Token name = expect(Tok::Ident);
      auto s = make_stmt(Stmt::Kind::DeclScalar, loc);
      s->name = name.text;
      expect(Tok::Assign);
      s->expr = parse_expr();
      return s;
    }
    Token name = expect(Tok::Ident);
    if (accept(Tok::LBracket)) {
      auto s = make_stmt(Stmt::Kind::Store, loc);
      s->name = name.text;
      s->expr = parse_expr();
      expect(Tok::RBracket);
      expect(Tok::Assign);
      s->value = parse_expr();
      return s;
    }
    if (accept(Tok::LParen)) {
      auto s = make_stmt(Stmt::Kind::Call, loc);
      s->name = name.text;
      parse_args(*s);
      return s;
    }
    expect(Tok::Assign);
    if (cur_.kind == Tok::KwHavoc) {
      cur_ = lex_.next();
      expect(Tok::LParen);
      expect(Tok::RParen);
      auto s = make_stmt(Stmt::Kind::Havoc, loc);
      s->name = name.text;
      return s;
    }
    if (cur_.kind == Tok::Ident) {
      // Could be `x = f(args)` or an expression starting with a variable;
      // look one token ahead by re-lexing is avoided by peeking the ident.
      Token callee = cur_;
      cur_ = lex_.next();
      if (accept(Tok::LParen)) {
        auto s = make_stmt(Stmt::Kind::Call, loc);
        s->name = callee.text;
        s->target = name.text;
        parse_args(*s);
        return s;
      }
      auto s = make_stmt(Stmt::Kind::Assign, loc);
      s->name = name.text;
      s->expr = continue_expr_from_ident(callee);
      return s;
    }
    auto s = make_stmt(Stmt::Kind::Assign, loc);
    s->name = name.text;
    s->expr = parse_expr();
    return s;
  }

  void parse_args(Stmt& s) {
    if (!accept(Tok::RParen)) {
      do {
        s.args.push_back(parse_expr());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
  }

  // Expression grammar, lowest to highest: || && (== !=) (< <= > >=) (+ -)
  // (* / %) unary primary.
  ExprPtr parse_expr() { return parse_or(); }

  // Resume expression parsing after an already-consumed identifier token.
  ExprPtr continue_expr_from_ident(const Token& ident) {
    ExprPtr primary;
    if (accept(Tok::LBracket)) {
      ExprPtr idx = parse_expr();
      expect(Tok::RBracket);
      primary = Expr::index(ident.text, std::move(idx));
    } else {
      primary = Expr::var(ident.text);
    }
    return climb_from(std::move(primary));
  }

  ExprPtr climb_from(ExprPtr lhs) {
    lhs = tail_mul(std::move(lhs));
    lhs = tail_add(std::move(lhs));
    lhs = tail_rel(std::move(lhs));
    lhs = tail_eq(std::move(lhs));
    lhs = tail_and(std::move(lhs));
    return tail_or(std::move(lhs));
  }

  ExprPtr parse_or() { return tail_or(parse_and()); }
  ExprPtr tail_or(ExprPtr lhs) {
    while (accept(Tok::OrOr)) lhs = Expr::binary(BinOp::Or, std::move(lhs), parse_and());
    return lhs;
  }

  ExprPtr parse_and() { return tail_and(parse_eq()); }
  ExprPtr tail_and(ExprPtr lhs) {
    while (accept(Tok::AndAnd)) lhs = Expr::binary(BinOp::And, std::move(lhs), parse_eq());
    return lhs;
  }

  ExprPtr parse_eq() { return tail_eq(parse_rel()); }
  ExprPtr tail_eq(ExprPtr lhs) {
    for (;;) {
      if (accept(Tok::EqEq)) lhs = Expr::binary(BinOp::Eq, std::move(lhs), parse_rel());
      else if (accept(Tok::NotEq)) lhs = Expr::binary(BinOp::Ne, std::move(lhs), parse_rel());
      else return lhs;
    }
  }

  ExprPtr parse_rel() { return tail_rel(parse_add()); }
  ExprPtr tail_rel(ExprPtr lhs) {
    for (;;) {
      if (accept(Tok::Lt)) lhs = Expr::binary(BinOp::Lt, std::move(lhs), parse_add());
      else if (accept(Tok::Le)) lhs = Expr::binary(BinOp::Le, std::move(lhs), parse_add());
      else if (accept(Tok::Gt)) lhs = Expr::binary(BinOp::Gt, std::move(lhs), parse_add());
      else if (accept(Tok::Ge)) lhs = Expr::binary(BinOp::Ge, std::move(lhs), parse_add());
      else return lhs;
    }
  }

  ExprPtr parse_add() { return tail_add(parse_mul()); }
  ExprPtr tail_add(ExprPtr lhs) {
    for (;;) {
      if (accept(Tok::Plus)) lhs = Expr::binary(BinOp::Add, std::move(lhs), parse_mul());
      else if (accept(Tok::Minus)) lhs = Expr::binary(BinOp::Sub, std::move(lhs), parse_mul());
      else return lhs;
    }
  }

  ExprPtr parse_mul() { return tail_mul(parse_unary()); }
  ExprPtr tail_mul(ExprPtr lhs) {
    for (;;) {
      if (accept(Tok::Star)) lhs = Expr::binary(BinOp::Mul, std::move(lhs), parse_unary());
      else if (accept(Tok::Slash)) lhs = Expr::binary(BinOp::Div, std::move(lhs), parse_unary());
      else if (accept(Tok::Percent)) lhs = Expr::binary(BinOp::Rem, std::move(lhs), parse_unary());
      else return lhs;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Tok::Minus)) return Expr::unary(UnOp::Neg, parse_unary());
    if (accept(Tok::Bang)) return Expr::unary(UnOp::Not, parse_unary());
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (cur_.kind == Tok::Int) {
      i64 v = cur_.value;
      cur_ = lex_.next();
      return Expr::lit(v);
    }
    if (cur_.kind == Tok::Ident) {
      Token name = cur_;
      cur_ = lex_.next();
      if (accept(Tok::LBracket)) {
        ExprPtr idx = parse_expr();
        expect(Tok::RBracket);
        return Expr::index(name.text, std::move(idx));
      }
      return Expr::var(name.text);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    fail("an expression");
  }

  Lexer lex_;
  Token cur_;
  Program prog_;
  SourceLoc prev_rbrace_;
};

}  // namespace

Program parse(const std::string& source_text, const std::string& file) {
  Parser p(source_text, file);
  return p.run();
}

}  // namespace swarmbmc
