#include <iostream>
#include <string>
#include <vector>

#include "sgr/cli.hpp"

int main(int argc, char** argv) {
  return sgr::cli::run(std::vector<std::string>(argv + 1, argv + argc),
                       std::cout, std::cerr);
}
