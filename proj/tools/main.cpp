#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return omegasep::cli::run(argc, argv, std::cout, std::cerr); }
