#include "qtda/cli.hpp"

int main(int argc, char** argv) { return qtda::cli::main_entry(argc, argv); }
