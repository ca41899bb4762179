#include <iostream>

#include "rlfgen/cli.h"

int main(int argc, char** argv) {
  return rlfgen::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
