#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return trackgen::cli::run(args, std::cout, std::cerr);
}
