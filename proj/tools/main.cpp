#include <iostream>
#include <string>
#include <vector>

#include "fuzzy_evolve/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fuzzy_evolve::run_cli(args, std::cout, std::cerr);
}
