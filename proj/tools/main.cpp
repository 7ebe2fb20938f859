#include <string>
#include <vector>

#include "spdchg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spdchg::run_command(std::move(args));
}
