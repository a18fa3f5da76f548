#include "soc/cli.hpp"

int main(int argc, char** argv) { return soc::run_cli(argc, argv); }
