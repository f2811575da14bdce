#include <iostream>

#include "pgatt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pgatt::cli::dispatch(args, std::cout, std::cerr);
}
