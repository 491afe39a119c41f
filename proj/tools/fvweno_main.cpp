#include "fvweno/cli.hpp"

int main(int argc, char** argv) { return fvweno::cli_main(argc, argv); }
