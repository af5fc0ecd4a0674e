#include <iostream>

#include "svpqa/config.hpp"

int main(int argc, char** argv) { return svpqa::run_cli(argc, argv, std::cout, std::cerr); }
