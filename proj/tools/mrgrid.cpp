#include <iostream>

#include "mrgrid/cli.hpp"

int main(int argc, char** argv) { return mrgrid::cli::run(argc, argv, std::cout, std::cerr); }
