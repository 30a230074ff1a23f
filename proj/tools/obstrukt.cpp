#include <iostream>

#include "obstrukt/cli.hpp"

int main(int argc, char** argv) { return obstrukt::cli::run_cli(argc, argv, std::cout, std::cerr); }
