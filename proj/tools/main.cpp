#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return pcasim::cli::run(argc, argv, std::cout, std::cerr);
}
