#include <iostream>

#include "sarplan/cli.hpp"

int main(int argc, char** argv) { return sarplan::cli_dispatch(argc, argv, std::cout, std::cerr); }
