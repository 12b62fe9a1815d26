#include <iostream>

#include "pcgauge/cli.hpp"

int main(int argc, char** argv) {
  return pcgauge::cli::run(argc, argv, std::cout, std::cerr);
}
