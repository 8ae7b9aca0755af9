#include <iostream>
#include <string>
#include <vector>

#include "swarmbmc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return swarmbmc::cli::run(args, std::cin, std::cout, std::cerr);
}
