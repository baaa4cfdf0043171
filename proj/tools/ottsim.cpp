#include <iostream>
#include <string>
#include <vector>

#include "ott/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ott::cli::run(args, std::cout, std::cerr);
}
