#include <iostream>

#include "paritykit/cli.hpp"

int main(int argc, char** argv) { return paritykit::cli::run(argc, argv, std::cout, std::cerr); }
