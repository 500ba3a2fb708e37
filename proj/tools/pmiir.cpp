#include <iostream>

#include "pmiir/cli.hpp"

int main(int argc, char** argv) {
  return pmiir::cli::run(argc, argv, std::cout, std::cerr);
}
