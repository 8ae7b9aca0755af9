#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "swarmbmc/ast.hpp"
#include "swarmbmc/errors.hpp"
#include "swarmbmc/ssa.hpp"

namespace swarmbmc {

// Clauses over non-zero signed variable indices, DIMACS convention.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

struct EncodeStats {
  int num_vars = 0;
  int num_clauses = 0;
  bool sliced = false;
};

// CNF plus the maps needed to read a counterexample back out of a model.
// Literal +1 is the reserved constant-true variable; -1 is constant false.
struct EncodedInstance {
  CnfFormula cnf;
  std::map<std::string, std::vector<int>> var_map;     // ssa name -> lits, LSB first
  std::vector<std::pair<u32, int>> assert_selectors;   // (assert id, selector lit)
  std::vector<StmtId> assert_origins;                  // by assert id
  std::vector<std::vector<int>> nondet_bits;           // by ssa nondet index
  EncodeStats stats;
};

/// Bit-blast the SSA program: ripple-carry add/sub, shift-add multiply,
/// restoring divide, comparator chains, per-bit muxes. The formula is
/// satisfiable iff some execution within the bound violates an assertion.
EncodedInstance encode(const SsaProgram& s, unsigned width);

void export_dimacs(const CnfFormula& f, std::ostream& os);
/// With a comment block mapping assert selectors and nondet literals.
void export_dimacs(const EncodedInstance& e, const SsaProgram& s, const Program& p,
                   std::ostream& os);

CnfFormula parse_dimacs(std::istream& is);

}  // namespace swarmbmc
