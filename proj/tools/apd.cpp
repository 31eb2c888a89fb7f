#include <iostream>

#include "apd/cli.hpp"

int main(int argc, char** argv) { return apd::cli::main_entry(argc, argv, std::cout, std::cerr); }
