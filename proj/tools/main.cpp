#include <iostream>
#include <string>
#include <vector>

#include "padicmf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return padicmf::run_cli(args, std::cout, std::cerr);
}
