#pragma once

namespace gridnet::cli {

// Entry point behind the `gridnet` binary. Exit codes: 0 success, 1 usage
// error, 2 data error.
int run(int argc, const char* const* argv);

}  // namespace gridnet::cli
