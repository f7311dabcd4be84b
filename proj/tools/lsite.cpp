#include <iostream>

#include "lsite/cli.hpp"

int main(int argc, char** argv) { return lsite::run_cli(argc, argv, std::cout, std::cerr); }
