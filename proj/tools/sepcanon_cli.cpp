#include <iostream>

#include "sepcanon/cli.hpp"

int main(int argc, char** argv) { return sepcanon::cli::run(argc, argv, std::cout, std::cerr); }
