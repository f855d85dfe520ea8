#include <iostream>

#include "ffext_cli.hpp"

int main(int argc, char** argv) { return ffext::cli::run_cli(argc, argv, std::cout, std::cerr); }
