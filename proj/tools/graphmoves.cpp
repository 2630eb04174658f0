#include <iostream>

#include "graphmoves/cli.hpp"

int main(int argc, char** argv) { return gm::run(argc, argv, std::cin, std::cout, std::cerr); }
