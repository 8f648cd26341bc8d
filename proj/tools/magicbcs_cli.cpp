#include <iostream>

#include "magicbcs/cli.hpp"

int main(int argc, char** argv) { return magicbcs::cli::run_cli(argc, argv, std::cout, std::cerr); }
