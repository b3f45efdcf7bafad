#include "cli.hpp"

int main(int argc, char** argv) { return primeham::cli::run(argc, argv); }
