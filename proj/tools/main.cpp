#include "gowerslab/cli.hpp"

int main(int argc, char** argv) { return gowerslab::cli::main_entry(argc, argv); }
