#include <iostream>

#include "trapcert/cli_io/run.hpp"

int main(int argc, char** argv) { return trapcert::cli_io::run(argc, argv, std::cout, std::cerr); }
