#include <iostream>

#include "twoperiodic/cli.hpp"

int main(int argc, char** argv) {
  return twoperiodic::cli::run(argc, argv, std::cout, std::cerr);
}
