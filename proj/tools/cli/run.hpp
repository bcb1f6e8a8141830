#pragma once

#include <ostream>

namespace qcs::cli {

/// Exit codes: 0 every check passed, 1 a check failed or a numerical
/// routine gave up, 2 invalid flags, parameters or output path.
/// Results go to `out` unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcs::cli
