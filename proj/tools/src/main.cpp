#include "compana/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return compana::cli::run(argc, argv, std::cout, std::cerr); }
