#include "dq/cli.hpp"

int main(int argc, char** argv) { return dq::cli::run(argc, argv, std::cout, std::cerr); }
