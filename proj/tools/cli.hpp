#pragma once

#include <iosfwd>

namespace irred::cli {

/// Runs one `irred` invocation. Exit codes: 0 success, 1 error or usage
/// problem, 2 a Borderline verdict.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace irred::cli
