#include "bargmann/cli/app.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bargmann::cli::run_subcommand(args, std::cout, std::cerr);
}
