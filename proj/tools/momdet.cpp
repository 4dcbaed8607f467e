#include "momdet/cli.hpp"

int main(int argc, char** argv) { return momdet::run_cli(argc, argv); }
