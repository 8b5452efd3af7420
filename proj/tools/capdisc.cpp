#include <iostream>
#include <string>
#include <vector>

#include "capdisc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return capdisc::cli::run(args, std::cout, std::cerr);
}
