#include <iostream>
#include <string>
#include <vector>

#include "xxz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return xxz::cli_main(args, std::cout, std::cerr);
}
