#include <iostream>

#include "degenfv/cli.hpp"

int main(int argc, char** argv) { return degenfv::run_cli(argc, argv, std::cout, std::cerr); }
