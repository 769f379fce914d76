#include <iostream>

#include "proofbench/cli/cli.hpp"

int main(int argc, char** argv) { return proofbench::cli::run_cli(argc, argv, std::cout, std::cerr); }
