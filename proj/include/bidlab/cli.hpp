#pragma once

namespace bidlab {

// Entry point for the command-line tool. Returns the process exit code:
// 0 success, 1 other failure, 2 configuration error, 3 contract violation.
int run_cli(int argc, char** argv);

}  // namespace bidlab
