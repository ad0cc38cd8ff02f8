#pragma once

namespace moran {

// Entry point shared by the binary and the CLI tests.
// Exit codes: 0 success, 2 configuration error, 3 event budget exceeded.
int run_cli(int argc, const char* const* argv);

}  // namespace moran
