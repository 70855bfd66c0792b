#include <iostream>

#include "ordtype/cli.hpp"

int main(int argc, char** argv) { return ordtype::cli::run(argc, argv, std::cout, std::cerr); }
