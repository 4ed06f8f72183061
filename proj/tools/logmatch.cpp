#include <iostream>

#include "logmatch/cli.hpp"

int main(int argc, char** argv) {
  return logmatch::cli::run(argc, argv, std::cout, std::cerr);
}
