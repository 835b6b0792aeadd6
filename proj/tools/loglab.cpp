#include <iostream>

#include "loglab/cli.hpp"

int main(int argc, char** argv) { return loglab::run_cli(argc, argv, std::cout, std::cerr); }
