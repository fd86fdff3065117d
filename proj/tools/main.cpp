#include <iostream>

#include "thermo/cli/commands.hpp"

int main(int argc, char** argv) { return thermo::cli::run_cli(argc, argv, std::cout, std::cerr); }
