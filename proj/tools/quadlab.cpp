#include <iostream>

#include "quadlab/cli.hpp"

int main(int argc, char** argv) {
  return quadlab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
