#include <iostream>

#include "sbtube/cli.hpp"

int main(int argc, char** argv) {
  return sbtube::cli::run_main(argc, argv, std::cout);
}
