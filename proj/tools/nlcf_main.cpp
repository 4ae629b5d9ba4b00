#include "nlcf/cli.hpp"

int main(int argc, char** argv) { return nlcf::run_cli(argc, argv); }
