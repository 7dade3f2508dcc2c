#include <iostream>

#include "bergsuita/cli.hpp"

int main(int argc, char** argv) { return bergsuita::cli::run(argc, argv, std::cout, std::cerr); }
