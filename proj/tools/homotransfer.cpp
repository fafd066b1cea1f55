#include <iostream>

#include "homotransfer/cli.hpp"

int main(int argc, char** argv) { return homotransfer::run_cli(argc, argv, std::cout, std::cerr); }
