#include <iostream>
#include <string>
#include <vector>

#include "alttrace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return alttrace::run_cli(args, std::cout, std::cerr);
}
