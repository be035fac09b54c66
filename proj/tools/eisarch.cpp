#include "eisarch/cli.hpp"

int main(int argc, char** argv) { return eisarch::cli::main_entry(argc, argv); }
