#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plateig/shape.hpp"

namespace plateig::cli {

/// Exit codes.
enum : int { kOk = 0, kUsage = 2, kSolverFailure = 3, kSearchContract = 4 };

/// Runs the command line `args` (program name excluded).  CSV goes to the --out file
/// or, without one, to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shape documents: {"P": P, "a1": [...], "b1": [...], "a2": [...], "b2": [...]}.
std::string shape_to_json(const FourierShape& s);
FourierShape shape_from_json(const std::string& text);

}  // namespace plateig::cli
