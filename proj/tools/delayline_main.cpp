#include "delayline/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return delayline::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
