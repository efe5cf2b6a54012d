#include <iostream>

#include "mtsweep/cli.hpp"

int main(int argc, char** argv) { return mtsweep::cli::run(argc, argv, std::cout, std::cerr); }
