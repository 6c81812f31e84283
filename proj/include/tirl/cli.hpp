#pragma once

#include <iosfwd>

namespace tirl {

/// Entry point of the `tirl` command. Exit codes: 0 success or pass,
/// 1 a verdict failed (non-episodic input, probe failure, golden mismatch,
/// rewards not equivalent, oracle disagreement), 2 usage, parse or input error.
/// Subcommands: validate, solve, boltzmann, shape, check-equiv, probe,
/// reproduce, oracle, export.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tirl
