#include <iostream>

#include "tirl/cli.hpp"

int main(int argc, char** argv) { return tirl::run_cli(argc, argv, std::cout, std::cerr); }
