#include <iostream>

#include "otsuki/cli.hpp"

int main(int argc, char** argv) {
  return otsuki::cli::main_entry(argc, argv, std::cout, std::cerr);
}
