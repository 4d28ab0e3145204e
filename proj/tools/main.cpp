#include <iostream>
#include <string>
#include <vector>

#include "cweig/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cweig::run(args, std::cout, std::cerr);
}
