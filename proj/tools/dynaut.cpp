#include <iostream>
#include <string>
#include <vector>

#include "dynaut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dynaut::run(args, std::cout, std::cerr);
}
