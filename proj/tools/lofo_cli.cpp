#include <iostream>

#include "lofo/cli.hpp"

int main(int argc, char** argv) { return lofo::run_cli(argc, argv, std::cout, std::cerr); }
