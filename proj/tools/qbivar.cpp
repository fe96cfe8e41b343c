#include <iostream>

#include "qbivar/cli.hpp"

int main(int argc, char** argv) { return qbd::run(argc, argv, std::cout, std::cerr); }
