#include <iostream>
#include <string>
#include <vector>

#include "posdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return posdec::run_cli(args, std::cout, std::cerr);
}
