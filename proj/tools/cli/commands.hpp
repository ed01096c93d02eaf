#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace torusspec::cli {

// Exit codes: 0 success, 1 usage, 2 inadmissible input, 3 solver failure,
// 4 violated variation hypothesis.
int run(const RunConfig& cfg);

// Individual commands; write the report to `out` and return the exit code.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_variations(const RunConfig& cfg, std::ostream& out);
int cmd_spinor(const RunConfig& cfg, std::ostream& out);
int cmd_bounds(const RunConfig& cfg, std::ostream& out);

}  // namespace torusspec::cli
