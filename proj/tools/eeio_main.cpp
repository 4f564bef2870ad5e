#include <iostream>
#include <string>
#include <vector>

#include "eeio/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return eeio::cli::run_command(args, std::cout, std::cerr);
}
