#include <iostream>

#include "diffield/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diffield::run(args, std::cout, std::cerr);
}
