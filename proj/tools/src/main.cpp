#include "abset_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return abset::cli::main_entry(argc, argv, std::cout, std::cerr); }
