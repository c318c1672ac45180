#include <iostream>

#include "fockloss/cli/commands.hpp"

int main(int argc, char** argv) { return fockloss::cli::run(argc, argv, std::cout, std::cerr); }
