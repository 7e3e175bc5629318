#include "mpfa/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mpfa::cli_main(argc, argv, std::cout, std::cerr); }
