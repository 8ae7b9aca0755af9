#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "swarmbmc/encode.hpp"

namespace swarmbmc {

void export_dimacs(const CnfFormula& f, std::ostream& os) {
  os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) os << lit << " ";
    os << "0\n";
  }
}

void export_dimacs(const EncodedInstance& e, const SsaProgram& s, const Program& p,
                   std::ostream& os) {
  os << "c swarm-bmc encoded instance, width " << s.width << ", depth " << s.unwind_bound
     << (s.sliced ? ", sliced" : "") << "\n";
  for (std::size_t i = 0; i < s.nondets.size(); ++i) {
    SourceLoc loc = p.loc_of(s.nondets[i].origin);
    os << "c nondet " << i << " " << s.nondets[i].name << " " << p.file << ":" << loc.line
       << " bits";
    for (int lit : e.nondet_bits[i]) os << " " << lit;
    os << "\n";
  }
  for (std::size_t i = 0; i < e.assert_selectors.size(); ++i) {
    const auto& [id, sel] = e.assert_selectors[i];
    SourceLoc loc = p.loc_of(e.assert_origins[i]);
    os << "c assert " << id << " " << p.file << ":" << loc.line << " selector " << sel << "\n";
  }
  export_dimacs(e.cnf, os);
}

CnfFormula parse_dimacs(std::istream& is) {
  CnfFormula f;
  bool have_header = false;
  long declared_clauses = 0;
  std::string line;
  std::vector<int> clause;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      ls >> p >> cnf >> f.num_vars >> declared_clauses;
      if (p != "p" || cnf != "cnf" || ls.fail() || f.num_vars < 0 || declared_clauses < 0)
        throw DimacsError("malformed DIMACS header: " + line);
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError("clause before DIMACS header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(clause);
        clause.clear();
      } else {
        int var = lit > 0 ? lit : -lit;
        if (var > f.num_vars) throw DimacsError("literal exceeds declared variable count");
        clause.push_back(lit);
      }
    }
    if (!ls.eof()) throw DimacsError("malformed clause line: " + line);
  }
  if (!have_header) throw DimacsError("missing DIMACS header");
  if (!clause.empty()) throw DimacsError("unterminated clause at end of input");
  if (declared_clauses != static_cast<long>(f.clauses.size()))
    throw DimacsError("clause count does not match header");
  return f;
}

}  // namespace swarmbmc
