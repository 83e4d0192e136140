#include <iostream>

#include "grc/cli.hpp"

int main(int argc, char** argv) { return grc::run_cli(argc, argv, std::cout, std::cerr); }
