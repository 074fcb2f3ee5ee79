#include <iostream>

#include "swanson_cli/commands.hpp"

int main(int argc, char** argv) { return swanson::cli::run(argc, argv, std::cout, std::cerr); }
