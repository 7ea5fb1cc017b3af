#include <iostream>

#include "wilf/cli.hpp"

int main(int argc, char** argv) { return wilf::cli::run(argc, argv, std::cout, std::cerr); }
