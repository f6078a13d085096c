#include <iostream>

#include "latmech/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return latmech::cli::dispatch(args, std::cout, std::cerr);
}
