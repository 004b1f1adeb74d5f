#include <iostream>

#include "hirota/cli.hpp"

int main(int argc, char** argv) { return hirota::cli::main_entry(argc, argv, std::cout, std::cerr); }
