#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ranbench/format.hpp"

namespace ranbench::envproto {

// Line-oriented messages exchanged with an external agent over stdio.
// Server -> peer: OBS, REWARD, EVENT, STEP, DONE, ERR. Peer -> server: ACT.
// Times are milliseconds since the end of warmup; eNB and UE numbers in
// EVENT lines are 1-based.

struct ObsMsg {
  int t_ms = 0;
  std::vector<double> values;
  friend bool operator==(const ObsMsg&, const ObsMsg&) = default;
};

struct RewardMsg {
  int t_ms = 0;
  double value = 0.0;
  friend bool operator==(const RewardMsg&, const RewardMsg&) = default;
};

struct HandoverMsg {
  int t_ms = 0;
  int ue = 1;
  int from = 1;
  int to = 1;
  friend bool operator==(const HandoverMsg&, const HandoverMsg&) = default;
};

struct StepMsg {
  int t_ms = 0;
  friend bool operator==(const StepMsg&, const StepMsg&) = default;
};

struct ActMsg {
  int action = 0;
  friend bool operator==(const ActMsg&, const ActMsg&) = default;
};

struct DoneMsg {
  int t_ms = 0;
  double final_score = 0.0;
  friend bool operator==(const DoneMsg&, const DoneMsg&) = default;
};

struct ErrMsg {
  std::string reason;
  friend bool operator==(const ErrMsg&, const ErrMsg&) = default;
};

using Message = std::variant<ObsMsg, RewardMsg, HandoverMsg, StepMsg, ActMsg, DoneMsg, ErrMsg>;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ranbench::format_real;

/// One line, without the trailing newline.
std::string serialize(const Message& msg);

/// Throws ProtocolError on anything that is not exactly one well-formed
/// message.
Message parse(std::string_view line);

}  // namespace ranbench::envproto
