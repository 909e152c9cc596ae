#include <iostream>
#include <string>
#include <vector>

#include "shorent/cli.hpp"

int main(int argc, char** argv) {
  return shorent::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
