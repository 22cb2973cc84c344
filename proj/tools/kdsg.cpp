#include "kdsg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kdsg::main_entry(argc, argv, std::cout, std::cerr); }
