#include "wrcm/cli.hpp"

int main(int argc, char** argv) { return wrcm::run_cli(argc, argv); }
