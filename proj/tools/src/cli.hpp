#pragma once

#include <iosfwd>

namespace emcel::cli {

/// Entry point of the emcel tool. Returns 0 on success, 1 on invalid
/// configuration and 2 on numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emcel::cli
