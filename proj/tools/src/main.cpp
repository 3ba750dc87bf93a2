#include <iostream>
#include <string>
#include <vector>

#include "infbern_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return infbern::cli::run(args, std::cout, std::cerr);
}
