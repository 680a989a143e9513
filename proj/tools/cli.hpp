#pragma once

#include <ostream>

namespace pmlkit::cli {

/// Runs the command line; returns the process exit code
/// (0 affirmative, 1 negative, 2 usage error, 3 resource limit).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmlkit::cli
