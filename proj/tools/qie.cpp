#include <iostream>
#include <string>
#include <vector>

#include "qie/cli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qie::cli::run_app(args, std::cout, std::cerr);
}
