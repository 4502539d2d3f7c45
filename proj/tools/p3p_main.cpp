#include <iostream>

#include "p3p/cli.hpp"

int main(int argc, char** argv) { return p3p::run_cli(argc, argv, std::cout, std::cerr); }
