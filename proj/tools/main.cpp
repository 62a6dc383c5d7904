#include <iostream>
#include <string>
#include <vector>

#include "wave_nonuniq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wave_nonuniq::cli::run(args, std::cout, std::cerr);
}
