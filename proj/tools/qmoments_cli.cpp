#include <iostream>

#include <qmoments/cli.hpp>

int main(int argc, char** argv) { return qmoments::cli::run(argc, argv, std::cout, std::cerr); }
