#include "ffdyn/cli.hpp"

int main(int argc, char** argv) { return ffdyn::run_cli(argc, argv); }
