#include "nrlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nrlab::cli_main(argc, argv, std::cout, std::cerr); }
