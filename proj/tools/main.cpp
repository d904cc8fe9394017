#include <iostream>

#include "kmn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kmn::run_cli(args, std::cout, std::cerr);
}
