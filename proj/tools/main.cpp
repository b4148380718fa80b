#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return faircon::run_cli(argc, argv, std::cout, std::cerr); }
