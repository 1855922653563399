#include "tqsl/harness/cli.hpp"

int main(int argc, char** argv) { return tqsl::harness::cli_run(argc, argv); }
