// Command-line entry point; the actual driver lives in the core library so the
// subcommands stay testable without spawning processes.

#include "linterm/cli.hpp"

int main(int argc, char** argv) { return linterm::run_cli(argc, argv); }
