#include "ltt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ltt::cli::run(argc, argv, std::cout, std::cerr); }
