#include <iostream>

#include "fnq/cli.hpp"

int main(int argc, char** argv) { return fnq::main_entry(argc, argv, std::cout, std::cerr); }
