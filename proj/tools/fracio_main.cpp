#include <iostream>

#include "fracio/fiocli.hpp"

int main(int argc, char** argv) {
  return fracio::cli::main_with_args(argc, argv, std::cout, std::cerr);
}
