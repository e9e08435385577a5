#include "ranbench/envproto/protocol.hpp"

#include <charconv>

namespace ranbench::envproto {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') throw ProtocolError("empty field");
    const std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) {
      out.push_back(line.substr(i));
      break;
    }
    out.push_back(line.substr(i, j - i));
    i = j + 1;
    if (i == line.size()) throw ProtocolError("trailing space");
  }
  return out;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ProtocolError("bad integer '" + std::string(s) + "'");
  return v;
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ProtocolError("bad real '" + std::string(s) + "'");
  return v;
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t n) {
  if (f.size() != n)
    throw ProtocolError(std::string(f[0]) + " expects " + std::to_string(n - 1) + " fields");
}

}  // namespace

std::string serialize(const Message& msg) {
  return std::visit(
      Overloaded{
          [](const ObsMsg& m) {
            std::string s = "OBS " + std::to_string(m.t_ms);
            for (double v : m.values) s += " " + format_real(v);
            return s;
          },
          [](const RewardMsg& m) {
            return "REWARD " + std::to_string(m.t_ms) + " " + format_real(m.value);
          },
          [](const HandoverMsg& m) {
            return "EVENT " + std::to_string(m.t_ms) + " HANDOVER " + std::to_string(m.ue) + " " +
                   std::to_string(m.from) + " " + std::to_string(m.to);
          },
          [](const StepMsg& m) { return "STEP " + std::to_string(m.t_ms); },
          [](const ActMsg& m) { return "ACT " + std::to_string(m.action); },
          [](const DoneMsg& m) {
            return "DONE " + std::to_string(m.t_ms) + " " + format_real(m.final_score);
          },
          [](const ErrMsg& m) { return "ERR " + m.reason; },
      },
      msg);
}

Message parse(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty()) throw ProtocolError("empty line");
  if (line.rfind("ERR ", 0) == 0) return ErrMsg{std::string(line.substr(4))};
  const auto f = split(line);
  const std::string_view tag = f[0];
  if (tag == "OBS") {
    if (f.size() < 2) throw ProtocolError("OBS expects a time");
    ObsMsg m{parse_int(f[1]), {}};
    for (std::size_t i = 2; i < f.size(); ++i) m.values.push_back(parse_real(f[i]));
    return m;
  }
  if (tag == "REWARD") {
    expect_fields(f, 3);
    return RewardMsg{parse_int(f[1]), parse_real(f[2])};
  }
  if (tag == "EVENT") {
    expect_fields(f, 6);
    if (f[2] != "HANDOVER") throw ProtocolError("unknown event '" + std::string(f[2]) + "'");
    return HandoverMsg{parse_int(f[1]), parse_int(f[3]), parse_int(f[4]), parse_int(f[5])};
  }
  if (tag == "STEP") {
    expect_fields(f, 2);
    return StepMsg{parse_int(f[1])};
  }
  if (tag == "ACT") {
    expect_fields(f, 2);
    return ActMsg{parse_int(f[1])};
  }
  if (tag == "DONE") {
    expect_fields(f, 3);
    return DoneMsg{parse_int(f[1]), parse_real(f[2])};
  }
  throw ProtocolError("unknown message '" + std::string(tag) + "'");
}

}  // namespace ranbench::envproto
