#include <iostream>
#include <string>
#include <vector>

#include "quartic_sos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return quartic_sos::run_cli(args, std::cout, std::cerr);
}
