#include <iostream>
#include <string>
#include <vector>

#include "epsdelta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epsdelta::cli::run(args, std::cout, std::cerr);
}
