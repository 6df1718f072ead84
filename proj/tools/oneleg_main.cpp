#include "oneleg/cli.hpp"

int main(int argc, char** argv) { return oneleg::run_cli(argc, argv); }
