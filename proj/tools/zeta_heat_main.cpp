#include <iostream>

#include "zeta_heat/cli.hpp"

int main(int argc, char** argv) { return zeta_heat::cli::main_entry(argc, argv, std::cout, std::cerr); }
