#include "swref/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return swref::run_cli(argc, argv, std::cout, std::cerr);
}
