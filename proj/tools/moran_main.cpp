#include "moran/cli.hpp"

int main(int argc, char** argv) { return moran::run_cli(argc, argv); }
