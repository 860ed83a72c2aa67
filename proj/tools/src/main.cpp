#include <iostream>
#include <string>
#include <vector>

#include "entanglia_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entanglia::cli::run(args, std::cin, std::cout, std::cerr, entanglia::cli::environment_from_process());
}
