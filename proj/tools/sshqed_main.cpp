#include <iostream>

#include "sshqed/cli.hpp"

int main(int argc, char** argv) { return sshqed::cli::run(argc, argv, std::cout, std::cerr); }
