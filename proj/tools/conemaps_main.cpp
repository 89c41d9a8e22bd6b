#include <iostream>

#include "conemaps/cli.hpp"

int main(int argc, char** argv) { return conemaps::run_cli(argc, argv, std::cout, std::cerr); }
