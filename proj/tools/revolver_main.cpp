#include "revolver/cli.hpp"

int main(int argc, char** argv) { return revolver::run_cli(argc, argv); }
