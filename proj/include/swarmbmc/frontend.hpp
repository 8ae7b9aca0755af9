#pragma once

#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"
#include "swarmbmc/errors.hpp"

namespace swarmbmc {

/// Parse mini-language source into a Program. Throws ParseError on any
/// syntactic problem; never crashes on arbitrary input.
Program parse(const std::string& source_text, const std::string& file = "<memory>");

/// Semantic checks: entry function, recursion, declarations, array sizes,
/// call arities. Empty result means the program is well-formed.
std::vector<SemanticError> validate(const Program& p);

/// The distinct log labels of the program, lexicographically ordered.
FeatureSet extract_features(const Program& p);

/// Pretty-print back to concrete syntax. parse(pretty(p)) is structurally
/// identical to p.
std::string pretty(const Program& p);
std::string pretty(const Expr& e);

}  // namespace swarmbmc
