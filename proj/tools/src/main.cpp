#include "cli.hpp"

int main(int argc, char** argv) { return boltzgap::cli::main(argc, argv); }
