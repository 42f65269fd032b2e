#pragma once

#include <ostream>

namespace twr::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,   // malformed config or flags, empty grid; nothing is written
  kInconsistent = 3,  // chart/twist inconsistency or invalid parameter values
  kNotConverged = 4,  // quadrature did not converge; results written and flagged
};

/// Entry point of the `twr` tool, with the streams injectable for tests.
///
///   twr commutator [--config PATH] [--out DIR] [--seed N] [--format F]
///   twr spectrum   ...
///   twr verify     ...
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twr::cli
