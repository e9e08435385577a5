#pragma once

#include <deque>
#include <vector>

#include "ranbench/ransim/radio.hpp"
#include "ranbench/ransim/scenario.hpp"

namespace ranbench::ransim {

struct LinkMeasurement {
  double rsrp_dbm = 0.0;
  double rssi_dbm = 0.0;
  double rsrq_db = 0.0;
  double sinr_data = 0.0;  // linear, as if this eNB were serving
};

struct DeliveryRecord {
  int t_ms = 0;  // end of the delivery interval
  double bytes = 0.0;
};

struct HandoverTimer {
  bool pending = false;
  int since_ms = 0;
};

enum class EventKind { Attach, Handover, Arrival, Kpi };

/// `ue`, `from` and `to` are 0-based; `to` holds the leg index for Arrival,
/// `value` the bytes delivered during the advance() call for Kpi.
struct SimEvent {
  EventKind kind = EventKind::Kpi;
  int t_ms = 0;
  int ue = -1;
  int from = -1;
  int to = -1;
  double value = 0.0;

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct MobilityState {
  enum class Phase { Idle, Moving, Dwelling, Finished };

  std::vector<Waypoint> schedule;
  double speed_mps = 0.0;
  int start_ms = 0;
  Phase phase = Phase::Idle;
  int leg = -1;
  int leg_start_ms = 0;
  int dwell_until_ms = 0;
  std::vector<Vec2> leg_origin;
};

struct NetworkState {
  RadioConfig radio;
  int clock_ms = 0;
  std::vector<EnbConfig> enbs;
  std::vector<Vec2> ue_positions;
  std::vector<int> attachments;  // -1 while unattached
  std::vector<std::deque<DeliveryRecord>> rx_history;
  std::vector<HandoverTimer> handover_timers;
  MobilityState mobility;

  int ue_count() const { return static_cast<int>(ue_positions.size()); }
  int enb_count() const { return static_cast<int>(enbs.size()); }

  /// Bytes received by `ue` with timestamps in (from_ms, to_ms].
  double window_bytes(int ue, int from_ms, int to_ms) const;

  /// Oldest instant whose window contents are still fully retained.
  int retained_since_ms() const;

  std::vector<int> attached_counts() const;
};

/// Builds a cold-start state: nobody attached, empty history, clock 0.
/// Mobility along the scenario's waypoint schedule begins at
/// `mobility_start_ms`.
NetworkState make_network(const ScenarioSpec& scenario, const std::vector<double>& powers_dbm,
                          const RadioConfig& radio, int mobility_start_ms = 0);

/// Per-eNB measurements for one UE.
std::vector<LinkMeasurement> measure(const NetworkState& state, int ue);

/// Initial cell selection by strongest RSRP, then A2/A4 RSRQ handovers gated
/// by time-to-trigger. Returns one event per attachment change.
std::vector<SimEvent> update_attachment(NetworkState& state);

/// Fluid downlink delivery over (clock, clock + dt]. Appends to rx_history
/// but leaves the clock untouched.
std::vector<double> deliver_traffic(NetworkState& state, int dt_ms);

/// Runs whole ticks: move, measure, attach/handover, deliver, tick the clock.
std::vector<SimEvent> advance(NetworkState& state, int dt_ms);

}  // namespace ranbench::ransim
