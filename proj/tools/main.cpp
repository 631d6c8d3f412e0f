#include <iostream>
#include <string>
#include <vector>

#include "bmmparse/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return bmmparse::cli::run(args, std::cout, std::cerr);
}
