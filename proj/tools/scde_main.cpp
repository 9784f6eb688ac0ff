#include "scde/cli.hpp"

int main(int argc, char** argv) { return scde::run_cli(argc, argv); }
