#include <iostream>

#include "mclaims/cli.hpp"

int main(int argc, char** argv) { return mclaims::run_cli(argc, argv, std::cout, std::cerr); }
