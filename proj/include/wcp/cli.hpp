#pragma once
// Experiment driver: parses key = value configs, dispatches the library,
// and emits deterministic tab-separated reports.

namespace wcp::cli {

// Exit codes: 0 success, 1 usage/config error (message on stderr),
// 2 when a requested condition constant did not converge (the report is
// still emitted with converged = false).
int run(int argc, const char* const* argv);

}  // namespace wcp::cli
