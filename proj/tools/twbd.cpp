#include <iostream>

#include "twbd/cli.hpp"

int main(int argc, char **argv) { return twbd::run_cli(argc, argv, std::cout, std::cerr); }
