#include <iostream>
#include <string>
#include <vector>

#include "nvb/cli.hpp"

int main(int argc, char** argv) {
  return nvb::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
