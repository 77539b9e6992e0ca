#include "bse/cli.hpp"

int main(int argc, char** argv) { return bse::cli::run(argc, argv); }
