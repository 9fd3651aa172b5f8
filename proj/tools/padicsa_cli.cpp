#include <iostream>

#include "padicsa/cli.hpp"

int main(int argc, char** argv) { return padicsa::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
