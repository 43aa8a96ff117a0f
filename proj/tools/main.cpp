#include <iostream>

#include "majorana/cli.hpp"

int main(int argc, char** argv) {
  return majorana::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
