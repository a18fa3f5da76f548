#pragma once

namespace soc {

// Entry point of the `soc` command line tool. Returns the process exit code:
// 0 on success, 1 when a computation or check reports failure, 2 on
// malformed input or usage.
int run_cli(int argc, char** argv);

}  // namespace soc
