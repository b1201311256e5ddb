#pragma once

#include <ostream>

namespace omegasep::cli {

/// Runs the omega-sep command line. Returns the process exit code: 0 on
/// success, 1 when a property fails or inputs are not disjoint, 2 on usage
/// or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omegasep::cli
