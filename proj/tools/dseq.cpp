#include "dseq/cli.hpp"

int main(int argc, char** argv) { return dseq::cli::main_entry(argc, argv); }
