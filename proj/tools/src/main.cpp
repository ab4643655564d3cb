#include <iostream>
#include <string>
#include <vector>

#include "ncg/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncg::cli::run(args, std::cout, std::cerr);
}
