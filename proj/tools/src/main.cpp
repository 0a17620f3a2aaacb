#include <iostream>

#include "fade_tools/cli.hpp"

int main(int argc, char** argv) { return fade::tools::run(argc, argv, std::cout, std::cerr); }
