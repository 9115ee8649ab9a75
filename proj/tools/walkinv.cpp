#include <iostream>

#include <walkinv/cli.hpp>

int main(int argc, char** argv) { return walkinv::cli::run(argc, argv, std::cout, std::cerr); }
