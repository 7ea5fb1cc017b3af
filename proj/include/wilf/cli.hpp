#pragma once

#include <iosfwd>

namespace wilf::cli {

/// Command-line front door. Streams are injected so tests can capture the
/// output; exit codes: 0 success, 1 input error, 2 internal assertion
/// failure (including prediction violations at exact horizons).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wilf::cli
