#include "arm/cli.hpp"

int main(int argc, char** argv) { return arm::run_cli(argc, argv); }
