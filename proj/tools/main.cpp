#include <iostream>

#include "toric/cli.hpp"

int main(int argc, char** argv) {
  return toric::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
