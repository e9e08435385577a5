#pragma once

#include <iosfwd>

namespace ranbench::bench {

/// Entry point of the `ranbench` command; returns the exit status.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ranbench::bench
