#include <iostream>

#include "mfnear/cli.hpp"

int main(int argc, char** argv) { return mfnear::cli::run_cli(argc, argv, std::cout, std::cerr); }
