#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmbmc::cli {

// Exit codes shared by all subcommands:
//   0 verified / replay confirmed / UNSAT
//  10 falsified / counterexample / SAT
//  20 resource-out, inconclusive, UNKNOWN
//  30 partially verified
//   2 usage or input error
//   1 replay did not confirm
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace swarmbmc::cli
