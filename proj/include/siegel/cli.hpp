#pragma once

#include <ostream>

namespace siegel::cli {

/// Exit status: 0 pass, 1 violation or numerical failure, 2 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace siegel::cli
