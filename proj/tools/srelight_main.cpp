#include "srelight/cli.hpp"

int main(int argc, char** argv) { return srelight::run_cli(argc, argv); }
