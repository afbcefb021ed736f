#include <iostream>

#include "eepc/cli.hpp"

int main(int argc, char** argv) { return eepc::run_cli(argc, argv, std::cout, std::cerr); }
