#include <iostream>

#include "obstruction_lab/cli.hpp"

int main(int argc, char** argv) { return obstruction_lab::run_command(argc, argv, std::cout, std::cerr); }
