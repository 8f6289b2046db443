#include "dofcount/cli.hpp"

int main(int argc, char** argv) { return dofcount::cli_main(argc, argv); }
