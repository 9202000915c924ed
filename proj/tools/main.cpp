#include <iostream>
#include <string>
#include <vector>

#include "aggpatch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return aggpatch::cli::run(args, std::cout, std::cerr);
}
