#include "idmk/cli.hpp"

int main(int argc, char** argv) { return idmk::run_cli(argc, argv); }
