#include <iostream>
#include <string>
#include <vector>

#include "gcf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gcf::cli::run_main(args, std::cout, std::cerr);
}
