#include "grl/cli/cli.hpp"

int main(int argc, char** argv) { return grl::cli::run(argc, argv); }
