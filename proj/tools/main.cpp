#include <iostream>

#include "pdczeno/cli.hpp"

int main(int argc, char** argv) { return pdczeno::cli::run(argc, argv, std::cout, std::cerr); }
