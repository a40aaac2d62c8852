#include "pwf/cli.hpp"

int main(int argc, char** argv) { return pwf::run_cli(argc, argv); }
