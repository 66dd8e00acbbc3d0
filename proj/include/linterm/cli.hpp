#pragma once
// Command-line driver: argument parsing, subcommand dispatch, report printing.
// Kept in the library so tests can exercise it in-process.

namespace linterm {

// Runs the full CLI; returns the process exit code (0 terminating,
// 1 non-terminating, 2 unknown, 64 usage/parse error, 70 internal error).
int run_cli(int argc, char** argv);

}  // namespace linterm
