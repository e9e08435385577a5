#include "ranbench/envproto/server.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "ranbench/envproto/protocol.hpp"

namespace ranbench::envproto {

namespace {

void send(std::ostream& out, const Message& m) { out << serialize(m) << '\n'; }

int fail(std::ostream& out, const std::string& reason) {
  send(out, ErrMsg{reason});
  out.flush();
  return 1;
}

}  // namespace

int serve_stdio(const EnvConfig& config, std::uint64_t episode_seed, std::istream& in,
                std::ostream& out) {
  RanEnv env(config);
  Observation obs = env.reset(episode_seed);
  send(out, ObsMsg{0, obs.values});
  send(out, StepMsg{0});
  out.flush();

  std::string line;
  while (true) {
    if (!std::getline(in, line)) return fail(out, "unexpected end of input");
    int action = 0;
    try {
      const Message m = parse(line);
      const auto* act = std::get_if<ActMsg>(&m);
      if (act == nullptr) return fail(out, "expected ACT");
      action = act->action;
    } catch (const ProtocolError& e) {
      return fail(out, e.what());
    }
    if (action < 0 || action >= env.action_count())
      return fail(out, "action " + std::to_string(action) + " out of range");

    const StepResult r = env.step(action);
    const int t = r.info.t_ms;
    send(out, ObsMsg{t, r.observation.values});
    send(out, RewardMsg{t, r.reward});
    for (const auto& ev : r.info.handovers)
      send(out, HandoverMsg{ev.t_ms - config.warmup_ms, ev.ue + 1, ev.from + 1, ev.to + 1});
    if (r.done) {
      send(out, DoneMsg{t, r.info.score});
      out.flush();
      return 0;
    }
    send(out, StepMsg{t});
    out.flush();
  }
}

}  // namespace ranbench::envproto
