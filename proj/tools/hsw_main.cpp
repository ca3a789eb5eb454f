#include "hsw/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hsw::cli::run(args, std::cout, std::cerr);
}
