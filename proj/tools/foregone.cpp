#include "foregone/cli.hpp"

int main(int argc, char** argv) { return foregone::cli::main(argc, argv); }
