#pragma once

namespace idmk {

// Full command-line surface: gen-data, train, eval, sweep, report,
// grad-check. Returns the process exit code: 0 success, 1 usage or
// configuration error, 2 runtime failure.
int run_cli(int argc, const char* const* argv);

}  // namespace idmk
