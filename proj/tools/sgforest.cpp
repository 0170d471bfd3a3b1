#include <iostream>

#include "sgforest/cli.hpp"

int main(int argc, char** argv) { return sgforest::cli::main_entry(argc, argv, std::cout, std::cerr); }
