#pragma once

#include <cstdint>
#include <iosfwd>

#include "ranbench/envproto/env.hpp"

namespace ranbench::envproto {

/// Runs one episode against a line-oriented peer. Returns the process exit
/// status: 0 after DONE, 1 after an ERR line.
int serve_stdio(const EnvConfig& config, std::uint64_t episode_seed, std::istream& in,
                std::ostream& out);

}  // namespace ranbench::envproto
