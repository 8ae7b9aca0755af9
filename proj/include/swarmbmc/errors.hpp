#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"

namespace swarmbmc {

struct ParseError : std::runtime_error {
  int line;
  int col;
  std::string expected;
  ParseError(std::string msg, int line_, int col_, std::string expected_ = "")
      : std::runtime_error(std::move(msg)), line(line_), col(col_),
        expected(std::move(expected_)) {}
};

enum class SemanticErrorKind {
  MissingEntry,
  EntryHasParams,
  DuplicateFunction,
  Recursion,
  UnknownFunction,
  ArityMismatch,
  UseBeforeDecl,
  Redeclaration,
  NonConstArraySize,
  NotAnArray,
  NotAScalar,
  EmptyLogLabel,
};

struct SemanticError {
  SemanticErrorKind kind;
  StmtId stmt = 0;
  std::string message;
};

struct UnknownFeatureError : std::runtime_error {
  explicit UnknownFeatureError(const std::string& label)
      : std::runtime_error("unknown feature: " + label) {}
};

struct WidthOutOfRangeError : std::runtime_error {
  explicit WidthOutOfRangeError(unsigned width)
      : std::runtime_error("bit width out of range [2,64]: " + std::to_string(width)) {}
};

struct SpaceTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimacsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swarmbmc
