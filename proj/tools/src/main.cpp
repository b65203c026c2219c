#include <iostream>

#include "lielab_cli/commands.hpp"

int main(int argc, char** argv) { return lielab::cli::main_entry(argc, argv, std::cout, std::cerr); }
