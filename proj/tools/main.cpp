#include "cli_reporter.hpp"

#include <iostream>

int main(int argc, char** argv) { return toric_plt::cli::run(argc, argv, std::cout, std::cerr); }
