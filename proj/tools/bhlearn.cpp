#include <iostream>

#include "bhlearn/cli.hpp"

int main(int argc, char** argv) { return bhlearn::cli::run(argc, argv, std::cout, std::cerr); }
