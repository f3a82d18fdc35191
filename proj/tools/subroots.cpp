#include <iostream>
#include <string>
#include <vector>

#include "subroot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subroot::run(args, std::cout, std::cerr);
}
