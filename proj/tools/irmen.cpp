#include <iostream>

#include "irmen/cli.hpp"

int main(int argc, char** argv) { return irmen::cli::run(argc, argv, std::cout, std::cerr); }
