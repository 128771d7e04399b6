#include <iostream>

#include "fitsgeo/cli.hpp"

int main(int argc, char** argv) { return fitsgeo::run_cli(argc, argv, std::cout, std::cerr); }
