#include "czek/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return czek::cli_main(argc, argv, std::cout, std::cerr); }
