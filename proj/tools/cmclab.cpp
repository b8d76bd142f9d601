#include "cmclab/cli.hpp"

int main(int argc, char** argv) { return cmclab::run_cli(argc, argv); }
