#include <unistd.h>

#include <iostream>

#include "omt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return omt::run_command(args, std::cout, std::cerr, omt::color_from_env(isatty(STDOUT_FILENO)));
}
