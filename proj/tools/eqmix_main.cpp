#include <iostream>

#include "eqmix/cli.hpp"

int main(int argc, char** argv) { return eqmix::run_cli(argc, argv, std::cout, std::cerr); }
