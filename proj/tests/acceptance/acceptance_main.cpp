// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "thermo/cli/acceptance.hpp"

int main(int argc, char** argv) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (argc > 1) threads = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));
  return thermo::cli::cmd_selftest(std::cout, threads);
}
