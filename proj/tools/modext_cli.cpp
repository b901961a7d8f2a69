#include <modext/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return modext::cli::run(argc, argv, std::cout, std::cerr); }
