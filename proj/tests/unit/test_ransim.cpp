#include <doctest.h>

#include <cmath>
#include <random>

#include "ranbench/ransim/network.hpp"
#include "ranbench/ransim/radio.hpp"
#include "ranbench/ransim/scenario.hpp"

using namespace ranbench::ransim;

namespace {

ScenarioSpec single_ue(Vec2 p) {
  ScenarioSpec s;
  s.name = "one";
  s.ue_positions = {p};
  s.clusters = {{p, 50.0, 1}};
  return s;
}

NetworkState warmed(const ScenarioSpec& s, std::vector<double> p, RadioConfig r = {}) {
  auto st = make_network(s, p, r);
  advance(st, 4000);
  return st;
}

}  // namespace

TEST_CASE("antenna pattern") {
  CHECK(antenna_gain(0.0) == doctest::Approx(0.0));
  CHECK(antenna_gain(35.0) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(antenna_gain(-35.0) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(antenna_gain(180.0) == doctest::Approx(-20.0));
  for (double a = -180; a <= 180; a += 7.5) {
    const double g = antenna_gain(a);
    CHECK(g <= 0.0);
    CHECK(g >= -20.0);
  }
}

TEST_CASE("pathloss") {
  CHECK(pathloss(1000.0) == doctest::Approx(128.1).epsilon(1e-12));
  CHECK(pathloss(500.0) == doctest::Approx(128.1 + 37.6 * std::log10(0.5)).epsilon(1e-12));
  CHECK(pathloss(500.0) == doctest::Approx(116.78).epsilon(1e-4));
  CHECK(pathloss(5.0) == pathloss(10.0));
  CHECK(pathloss(0.0) == pathloss(10.0));
}

TEST_CASE("triangle geometry") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {30, 30, 30});
  REQUIRE(enbs.size() == 3);
  CHECK(arena_radius(r) == doctest::Approx(1000.0 / std::sqrt(3.0)));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(distance(enbs[i].position, {0, 0}) == doctest::Approx(arena_radius(r)));
    CHECK(distance(enbs[i].position, enbs[(i + 1) % 3].position) == doctest::Approx(1000.0));
    // Boresight points at the centre.
    CHECK(offset_angle(enbs[i], {0, 0}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(enbs[i].id == static_cast<int>(i) + 1);
  }
  CHECK_THROWS(make_triangle_enbs(r, {30, 30}));
}

TEST_CASE("scenario sampling is a pure function of the seed and stays in the arena") {
  RadioConfig r;
  const double R = arena_radius(r);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto a = sample_scenario(seed, 12, r);
    const auto b = sample_scenario(seed, 12, r);
    CHECK(a.ue_positions == b.ue_positions);
    REQUIRE(a.ue_positions.size() == 12);
    CHECK(a.clusters.size() >= 1);
    CHECK(a.clusters.size() <= 3);
    int sum = 0;
    for (const auto& c : a.clusters) {
      sum += c.ue_count;
      CHECK(c.ue_count >= 1);
      CHECK(c.radius_m >= 50.0);
      CHECK(c.radius_m <= 300.0);
      CHECK(std::hypot(c.center.x, c.center.y) <= R + 1e-9);
    }
    CHECK(sum == 12);
    for (const auto& p : a.ue_positions) CHECK(std::hypot(p.x, p.y) <= R + 1e-9);
    CHECK(a.ue_speed_mps == 0.0);
  }
}

TEST_CASE("scenario json round trip") {
  auto s = sample_scenario(17, 12);
  s.waypoint_schedule = {{s.ue_positions, 3.5}};
  s.ue_speed_mps = kMovingSpeedMps;
  nlohmann::json j = s;
  const auto back = j.get<ScenarioSpec>();
  CHECK(back.ue_positions == s.ue_positions);
  CHECK(back.seed == s.seed);
  CHECK(back.clusters.size() == s.clusters.size());
  REQUIRE(back.waypoint_schedule.size() == 1);
  CHECK(back.waypoint_schedule[0].dwell_s == 3.5);
  CHECK(nlohmann::json(back) == j);
}

TEST_CASE("scenario validation rejects UEs outside the arena") {
  auto s = single_ue({2000, 0});
  CHECK_THROWS(s.validate({}));
}

TEST_CASE("rsrq is never positive and sinr never negative") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pw(20, 40);
    auto st = make_network(sample_scenario(seed, 12), {pw(rng), pw(rng), pw(rng)}, {});
    for (int u = 0; u < 12; ++u)
      for (const auto& m : measure(st, u)) {
        CHECK(m.rsrq_db <= 0.0);
        CHECK(m.sinr_data >= 0.0);
      }
  }
}

TEST_CASE("single eNB with negligible noise gives rsrq near 0 dB") {
  RadioConfig r;
  r.thermal_noise_dbm_hz = -300;
  auto st = make_network(single_ue({0, 100}), {30, 30, 30}, r);
  st.enbs.resize(1);
  CHECK(measure(st, 0)[0].rsrq_db == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("equidistant UE sees rsrq of -10 log10(3)") {
  RadioConfig r;
  r.thermal_noise_dbm_hz = -300;
  auto st = make_network(single_ue({0, 0}), {30, 30, 30}, r);
  for (const auto& m : measure(st, 0))
    CHECK(m.rsrq_db == doctest::Approx(-10.0 * std::log10(3.0)).epsilon(1e-9));
}

TEST_CASE("rsrp/rssi follow the link budget") {
  auto st = make_network(single_ue({120, -40}), {25, 33, 38}, {});
  const auto m = measure(st, 0);
  double total = 0.0;
  for (int b = 0; b < 3; ++b) {
    const auto& e = st.enbs[b];
    const double expected = e.tx_power_dbm + antenna_gain(offset_angle(e, {120, -40})) -
                            pathloss(distance(e.position, {120, -40}));
    CHECK(m[b].rsrp_dbm == doctest::Approx(expected).epsilon(1e-12));
    total += std::pow(10.0, expected / 10.0);
  }
  const double noise_mw = std::pow(10.0, (-174.0 + 9.0 + 10.0 * std::log10(5e6)) / 10.0);
  const double rssi = 10.0 * std::log10(total + noise_mw);
  for (int b = 0; b < 3; ++b) {
    CHECK(m[b].rssi_dbm == doctest::Approx(rssi).epsilon(1e-12));
    CHECK(m[b].rsrq_db == doctest::Approx(m[b].rsrp_dbm - rssi).epsilon(1e-12));
    // dB/linear round trip
    CHECK(linear_to_db(db_to_linear(m[b].rsrp_dbm)) == doctest::Approx(m[b].rsrp_dbm).epsilon(1e-9));
  }
}

TEST_CASE("data sinr tracks serving power only") {
  auto a = make_network(single_ue({50, 60}), {30, 30, 30}, {});
  auto b = make_network(single_ue({50, 60}), {40, 30, 30}, {});
  auto c = make_network(single_ue({50, 60}), {30, 20, 40}, {});
  const double s_a = measure(a, 0)[0].sinr_data;
  CHECK(10 * std::log10(measure(b, 0)[0].sinr_data / s_a) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(measure(c, 0)[0].sinr_data == doctest::Approx(s_a).epsilon(1e-12));
}

TEST_CASE("attachment picks the strongest eNB") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {30, 30, 30});
  const Vec2 near0{enbs[0].position.x * 0.8, enbs[0].position.y * 0.8};
  auto st = make_network(single_ue(near0), {30, 30, 30}, r);
  const auto ev = update_attachment(st);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == EventKind::Attach);
  CHECK(st.attachments[0] == 0);
}

TEST_CASE("A2 gate blocks handovers while serving quality is good") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {30, 30, 30});
  const Vec2 near0{enbs[0].position.x * 0.7, enbs[0].position.y * 0.7};
  auto st = warmed(single_ue(near0), {30, 30, 30}, r);
  REQUIRE(measure(st, 0)[0].rsrq_db > r.a2_threshold_db);
  // Make a neighbour better, but not enough to push serving below A2.
  st.enbs[1].tx_power_dbm = 40;
  const int serving = st.attachments[0];
  if (measure(st, 0)[serving].rsrq_db > r.a2_threshold_db) {
    for (const auto& e : advance(st, 3000)) CHECK(e.kind != EventKind::Handover);
    CHECK(st.attachments[0] == serving);
  }
}

TEST_CASE("dropping the serving power hands UEs over within 2 s") {
  const auto s = sample_scenario(0, 12);
  auto st = warmed(s, {40, 40, 40});
  const auto counts = st.attached_counts();
  int busiest = 0;
  for (int b = 1; b < 3; ++b)
    if (counts[b] > counts[busiest]) busiest = b;
  st.enbs[busiest].tx_power_dbm = 20;
  int handovers = 0;
  for (const auto& e : advance(st, 2000))
    if (e.kind == EventKind::Handover) {
      ++handovers;
      CHECK(e.from == busiest);
    }
  CHECK(handovers >= 1);
}

TEST_CASE("handover respects time to trigger") {
  const auto s = sample_scenario(0, 12);
  auto st = warmed(s, {40, 40, 40});
  const auto counts = st.attached_counts();
  int busiest = 0;
  for (int b = 1; b < 3; ++b)
    if (counts[b] > counts[busiest]) busiest = b;
  st.enbs[busiest].tx_power_dbm = 20;
  const int t0 = st.clock_ms;
  for (const auto& e : advance(st, 2000))
    if (e.kind == EventKind::Handover) CHECK(e.t_ms - t0 >= 256);
}

TEST_CASE("traffic: spectral-efficiency cap binds for a lone high-SINR UE") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {40, 40, 40});
  auto st = make_network(single_ue({enbs[0].position.x * 0.9, enbs[0].position.y * 0.9}),
                         {40, 40, 40}, r);
  update_attachment(st);
  const auto d = deliver_traffic(st, 10);
  const double rate = std::min(5e6 / 3.0 * 4.8, 20e6);
  CHECK(rate == doctest::Approx(8e6));
  CHECK(d[0] == doctest::Approx(rate * 0.010 / 8.0).epsilon(1e-12));
}

TEST_CASE("traffic: twelve UEs on one eNB share the subband") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {40, 40, 40});
  ScenarioSpec s;
  for (int i = 0; i < 12; ++i)
    s.ue_positions.push_back({enbs[0].position.x * 0.85 + i, enbs[0].position.y * 0.85});
  s.clusters = {{s.ue_positions[0], 50, 12}};
  auto st = make_network(s, {40, 40, 40}, r);
  update_attachment(st);
  REQUIRE(st.attached_counts()[0] == 12);
  const auto d = deliver_traffic(st, 1000);
  for (double b : d) CHECK(b * 8.0 <= (5e6 / 3.0 * 4.8) / 12.0 + 1e-6);
}

TEST_CASE("an eNB without UEs delivers nothing and does not affect others") {
  RadioConfig r;
  const auto enbs = make_triangle_enbs(r, {30, 30, 30});
  auto st = make_network(single_ue({enbs[2].position.x * 0.8, enbs[2].position.y * 0.8}),
                         {30, 30, 30}, r);
  update_attachment(st);
  CHECK(st.attached_counts() == std::vector<int>{0, 0, 1});
  const double before = deliver_traffic(st, 10)[0];
  st.enbs[0].tx_power_dbm = 40;
  CHECK(deliver_traffic(st, 10)[0] == before);
}

TEST_CASE("conservation: history windows sum the delivered bytes") {
  auto st = make_network(sample_scenario(3, 12), {30, 35, 25}, {});
  advance(st, 1000);
  std::vector<double> delivered(12, 0.0);
  const int t0 = st.clock_ms;
  for (int k = 0; k < 50; ++k) {
    update_attachment(st);
    const auto d = deliver_traffic(st, 10);
    for (int u = 0; u < 12; ++u) delivered[u] += d[u];
    st.clock_ms += 10;
  }
  for (int u = 0; u < 12; ++u)
    CHECK(st.window_bytes(u, t0, st.clock_ms) == doctest::Approx(delivered[u]).epsilon(1e-12));
}

TEST_CASE("history is time ordered and bounded by retention") {
  auto st = make_network(sample_scenario(4, 12), {30, 30, 30}, {});
  advance(st, 6000);
  for (const auto& h : st.rx_history) {
    REQUIRE(!h.empty());
    CHECK(h.front().t_ms > st.clock_ms - 2000);
    CHECK(h.back().t_ms <= st.clock_ms);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].t_ms > h[i - 1].t_ms);
  }
}

TEST_CASE("warmup attaches every UE") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto st = warmed(sample_scenario(seed, 12), {30, 30, 30});
    for (int a : st.attachments) CHECK(a >= 0);
  }
}

TEST_CASE("advance is deterministic") {
  auto a = make_network(sample_scenario(11, 12), {22, 37, 31}, {});
  auto b = a;
  advance(a, 100);
  advance(a, 100);
  advance(b, 100);
  advance(b, 100);
  for (int u = 0; u < 12; ++u) {
    REQUIRE(a.rx_history[u].size() == b.rx_history[u].size());
    for (std::size_t i = 0; i < a.rx_history[u].size(); ++i) {
      CHECK(a.rx_history[u][i].t_ms == b.rx_history[u][i].t_ms);
      CHECK(a.rx_history[u][i].bytes == b.rx_history[u][i].bytes);
    }
  }
}

TEST_CASE("advance rejects steps that are not whole ticks") {
  auto st = make_network(sample_scenario(1, 12), {30, 30, 30}, {});
  CHECK_THROWS_AS(advance(st, 15), std::invalid_argument);
  CHECK_THROWS_AS(advance(st, 0), std::invalid_argument);
}

TEST_CASE("waypoint kinematics: 1000 m at 14 m/s") {
  // The arena is too small for longer straight legs.
  ScenarioSpec s = single_ue({-500, 0});
  s.waypoint_schedule = {{{{500, 0}}, 1.0}};
  s.ue_speed_mps = kMovingSpeedMps;
  auto st = make_network(s, {30, 30, 30}, {}, 0);
  int arrival = -1;
  for (int k = 0; k < 80 && arrival < 0; ++k)
    for (const auto& e : advance(st, 1000))
      if (e.kind == EventKind::Arrival) arrival = e.t_ms;
  REQUIRE(arrival >= 0);
  CHECK(std::abs(arrival - 1000.0 / 14.0 * 1000.0) <= 10.0);
  CHECK(st.ue_positions[0] == Vec2{500, 0});
}

TEST_CASE("mobility waits for its start time") {
  ScenarioSpec s = single_ue({-500, 0});
  s.waypoint_schedule = {{{{500, 0}}, 1.0}};
  s.ue_speed_mps = kMovingSpeedMps;
  auto st = make_network(s, {30, 30, 30}, {}, 4000);
  advance(st, 4000);
  CHECK(st.ue_positions[0] == Vec2{-500, 0});
  advance(st, 1000);
  CHECK(st.ue_positions[0].x > -500);
}
