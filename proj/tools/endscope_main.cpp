#include "endscope/cli.hpp"

int main(int argc, char** argv) { return endscope::cli_main(argc, argv); }
