#include <iostream>
#include <string>
#include <vector>

#include "linvol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return linvol::cli_run(args, std::cout, std::cerr);
}
