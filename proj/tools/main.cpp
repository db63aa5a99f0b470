#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  qra::cli::Environment env;
  env.stdout_is_tty = ::isatty(STDOUT_FILENO) != 0;
  env.no_color = std::getenv("QRA_NO_COLOR") != nullptr;
  return qra::cli::run(args, std::cout, std::cerr, env);
}
