#include <iostream>

#include "confgauss/cli_driver.hpp"

int main(int argc, char** argv) { return confgauss::run_cli(argc, argv, std::cout, std::cerr); }
