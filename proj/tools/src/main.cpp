#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return xot::run_cli(argc, argv, std::cout, std::cerr); }
