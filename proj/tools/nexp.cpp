#include <iostream>

#include "nexp/cli.hpp"

int main(int argc, char** argv) { return nexp::cli::run(argc, argv, std::cout, std::cerr); }
