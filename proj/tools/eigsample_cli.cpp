#include "eigsample/harness.hpp"

#include <iostream>

int main(int argc, char** argv) { return eigsample::cli_main(argc, argv, std::cout, std::cerr); }
