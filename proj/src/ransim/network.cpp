#include "ranbench/ransim/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranbench::ransim {

double NetworkState::window_bytes(int ue, int from_ms, int to_ms) const {
  double sum = 0.0;
  for (const auto& rec : rx_history.at(ue)) {
    if (rec.t_ms > to_ms) break;
    if (rec.t_ms > from_ms) sum += rec.bytes;
  }
  return sum;
}

int NetworkState::retained_since_ms() const {
  return std::max(0, clock_ms - radio.history_retention_ms);
}

std::vector<int> NetworkState::attached_counts() const {
  std::vector<int> counts(enbs.size(), 0);
  for (int a : attachments)
    if (a >= 0) ++counts[a];
  return counts;
}

NetworkState make_network(const ScenarioSpec& scenario, const std::vector<double>& powers_dbm,
                          const RadioConfig& radio, int mobility_start_ms) {
  radio.validate();
  scenario.validate(radio);
  NetworkState s;
  s.radio = radio;
  s.enbs = make_triangle_enbs(radio, powers_dbm);
  s.ue_positions = scenario.ue_positions;
  const auto n = s.ue_positions.size();
  s.attachments.assign(n, -1);
  s.rx_history.resize(n);
  s.handover_timers.resize(n);
  s.mobility.schedule = scenario.waypoint_schedule;
  s.mobility.speed_mps = scenario.ue_speed_mps;
  s.mobility.start_ms = mobility_start_ms;
  return s;
}

std::vector<LinkMeasurement> measure(const NetworkState& state, int ue) {
  const Vec2 pos = state.ue_positions.at(ue);
  const auto& radio = state.radio;
  std::vector<LinkMeasurement> out(state.enbs.size());
  double total_mw = 0.0;
  for (std::size_t b = 0; b < state.enbs.size(); ++b) {
    const auto& enb = state.enbs[b];
    const double gain =
        antenna_gain(offset_angle(enb, pos), radio.beamwidth_deg, radio.max_attenuation_db);
    out[b].rsrp_dbm = enb.tx_power_dbm + gain - pathloss(distance(enb.position, pos));
    total_mw += db_to_linear(out[b].rsrp_dbm);
  }
  const double meas_noise_mw = db_to_linear(noise_dbm(radio, radio.bandwidth_hz));
  const double rssi_dbm = linear_to_db(total_mw + meas_noise_mw);
  for (std::size_t b = 0; b < state.enbs.size(); ++b) {
    const double data_noise_mw =
        db_to_linear(noise_dbm(radio, state.enbs[b].bandwidth_hz / 3.0));
    out[b].rssi_dbm = rssi_dbm;
    out[b].rsrq_db = out[b].rsrp_dbm - rssi_dbm;
    out[b].sinr_data = db_to_linear(out[b].rsrp_dbm) / data_noise_mw;
  }
  return out;
}

std::vector<SimEvent> update_attachment(NetworkState& state) {
  std::vector<SimEvent> events;
  const auto& radio = state.radio;
  for (int u = 0; u < state.ue_count(); ++u) {
    const auto m = measure(state, u);
    int& serving = state.attachments[u];
    auto& timer = state.handover_timers[u];

    if (serving < 0) {
      int best = 0;
      for (int b = 1; b < static_cast<int>(m.size()); ++b)
        if (m[b].rsrp_dbm > m[best].rsrp_dbm) best = b;
      serving = best;
      timer = {};
      events.push_back({EventKind::Attach, state.clock_ms, u, -1, best, 0.0});
      continue;
    }

    const double serving_rsrq = m[serving].rsrq_db;
    int target = -1;
    if (serving_rsrq < radio.a2_threshold_db) {
      for (int b = 0; b < static_cast<int>(m.size()); ++b) {
        if (b == serving) continue;
        if (m[b].rsrq_db > serving_rsrq + radio.a4_offset_db &&
            (target < 0 || m[b].rsrq_db > m[target].rsrq_db))
          target = b;
      }
    }
    if (target < 0) {
      timer = {};
      continue;
    }
    if (!timer.pending) timer = {true, state.clock_ms};
    if (state.clock_ms - timer.since_ms >= radio.time_to_trigger_ms) {
      events.push_back({EventKind::Handover, state.clock_ms, u, serving, target, 0.0});
      serving = target;
      timer = {};
    }
  }
  return events;
}

std::vector<double> deliver_traffic(NetworkState& state, int dt_ms) {
  if (dt_ms <= 0) throw std::invalid_argument("deliver_traffic: dt must be positive");
  const auto& radio = state.radio;
  const auto counts = state.attached_counts();
  const int stamp = state.clock_ms + dt_ms;
  std::vector<double> delivered(state.ue_positions.size(), 0.0);

  for (int u = 0; u < state.ue_count(); ++u) {
    const int b = state.attachments[u];
    if (b < 0) continue;
    const double subband = state.enbs[b].bandwidth_hz / 3.0;
    const double share_hz = subband / counts[b];
    const double sinr = measure(state, u)[b].sinr_data;
    const double rate = std::min({share_hz * std::log2(1.0 + sinr), share_hz * radio.se_cap,
                                  radio.cbr_rate_bps});
    delivered[u] = rate * dt_ms / 8000.0;
  }

  const int horizon = stamp - radio.history_retention_ms;
  for (int u = 0; u < state.ue_count(); ++u) {
    auto& hist = state.rx_history[u];
    if (!hist.empty() && hist.back().t_ms == stamp)
      hist.back().bytes += delivered[u];
    else
      hist.push_back({stamp, delivered[u]});
    while (!hist.empty() && hist.front().t_ms <= horizon) hist.pop_front();
  }
  return delivered;
}

namespace {

void start_leg(MobilityState& mob, const std::vector<Vec2>& positions, int leg, int now) {
  mob.leg = leg;
  mob.phase = MobilityState::Phase::Moving;
  mob.leg_start_ms = now;
  mob.leg_origin = positions;
}

void move_ues(NetworkState& state, std::vector<SimEvent>& events) {
  auto& mob = state.mobility;
  using Phase = MobilityState::Phase;
  const int now = state.clock_ms;
  if (mob.schedule.empty() || now < mob.start_ms || mob.phase == Phase::Finished) return;

  if (mob.phase == Phase::Idle) start_leg(mob, state.ue_positions, 0, now);
  if (mob.phase == Phase::Dwelling && now >= mob.dwell_until_ms) {
    if (mob.leg + 1 < static_cast<int>(mob.schedule.size())) {
      start_leg(mob, state.ue_positions, mob.leg + 1, now);
    } else {
      mob.phase = Phase::Finished;
      return;
    }
  }
  if (mob.phase != Phase::Moving) return;

  const auto& targets = mob.schedule[mob.leg].targets;
  const double travelled = mob.speed_mps * (now - mob.leg_start_ms) / 1000.0;
  bool all_arrived = true;
  for (std::size_t i = 0; i < state.ue_positions.size(); ++i) {
    const Vec2 from = mob.leg_origin[i];
    const Vec2 to = targets[i];
    const double dist = distance(from, to);
    if (travelled >= dist) {
      state.ue_positions[i] = to;
    } else {
      all_arrived = false;
      const double f = travelled / dist;
      state.ue_positions[i] = {from.x + f * (to.x - from.x), from.y + f * (to.y - from.y)};
    }
  }
  if (all_arrived) {
    mob.phase = Phase::Dwelling;
    mob.dwell_until_ms = now + static_cast<int>(std::lround(mob.schedule[mob.leg].dwell_s * 1000.0));
    events.push_back({EventKind::Arrival, now, -1, -1, mob.leg, 0.0});
  }
}

}  // namespace

std::vector<SimEvent> advance(NetworkState& state, int dt_ms) {
  const int tick = state.radio.tick_ms;
  if (dt_ms <= 0 || dt_ms % tick != 0)
    throw std::invalid_argument("advance: dt must be a positive multiple of the tick");
  std::vector<SimEvent> events;
  double bytes = 0.0;
  for (int k = 0; k < dt_ms / tick; ++k) {
    move_ues(state, events);
    auto changes = update_attachment(state);
    events.insert(events.end(), changes.begin(), changes.end());
    for (double b : deliver_traffic(state, tick)) bytes += b;
    state.clock_ms += tick;
  }
  events.push_back({EventKind::Kpi, state.clock_ms, -1, -1, -1, bytes});
  return events;
}

}  // namespace ranbench::ransim
