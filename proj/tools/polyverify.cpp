#include <iostream>

#include "polyverify/cli.hpp"

int main(int argc, char** argv) { return polyverify::cli::run(argc, argv, std::cout, std::cerr); }
