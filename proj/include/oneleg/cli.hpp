#pragma once

namespace oneleg {

// Entry point of the `oneleg` tool; returns the process exit code
// (0 success, 2 config error, 3 solver failure, 4 study assertion).
int run_cli(int argc, char** argv);

}  // namespace oneleg
