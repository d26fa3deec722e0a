#include <iostream>
#include <string>
#include <vector>

#include "falg/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const falg::CommandResult r = falg::run_command(args);
  (r.exit_code == 2 ? std::cerr : std::cout) << r.output;
  return r.exit_code;
}
