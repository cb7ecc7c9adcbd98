#include <iostream>

#include "circlekit/cli.hpp"

int main(int argc, char** argv) { return circlekit::cli::run(argc, argv, std::cout, std::cerr); }
