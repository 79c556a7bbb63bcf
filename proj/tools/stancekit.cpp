#include <iostream>

#include "stancekit/cli.hpp"

int main(int argc, char** argv) { return stancekit::cli::run(argc, argv, std::cout, std::cerr); }
