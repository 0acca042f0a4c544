#include <iostream>

#include "circlens/cli.hpp"

int main(int argc, char** argv) { return circlens::run_cli(argc, argv, std::cout, std::cerr); }
