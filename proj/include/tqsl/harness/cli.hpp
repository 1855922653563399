#pragma once

// Command-line entry point, kept in the library so tests can drive it
// in-process.  Subcommands: quench, sweep, verify, models list.
// Exit codes: 0 success, 1 suite/certification failure, 2 configuration
// error, 3 resource-cap error.

namespace tqsl::harness {

int cli_run(int argc, const char* const* argv);

}  // namespace tqsl::harness
