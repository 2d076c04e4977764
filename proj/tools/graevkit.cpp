#include <iostream>

#include "graevkit/cli.hpp"

int main(int argc, char** argv) { return graevkit::run_cli(argc, argv, std::cout, std::cerr); }
