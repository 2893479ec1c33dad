#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sgue::cli::run(argc, argv, std::cout, std::cerr); }
