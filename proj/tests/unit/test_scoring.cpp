#include <doctest.h>

#include <cmath>
#include <random>

#include "ranbench/ransim/network.hpp"
#include "ranbench/scoring.hpp"

using namespace ranbench;
using scoring::ScoreParams;
using scoring::total_score;
using scoring::ue_experience;

namespace {

ransim::NetworkState empty_state(int ues, int clock_ms) {
  ransim::ScenarioSpec s;
  s.name = "x";
  for (int u = 0; u < ues; ++u) s.ue_positions.push_back({0.0, 0.0});
  s.clusters = {{{0.0, 0.0}, 10.0, ues}};
  auto st = ransim::make_network(s, {30, 30, 30}, {});
  st.clock_ms = clock_ms;
  return st;
}

// Twelve UEs placed 60 m in front of the listed eNBs.
ransim::ScenarioSpec placed(const std::vector<int>& enb_of_ue) {
  const auto enbs = ransim::make_triangle_enbs({}, {30, 30, 30});
  ransim::ScenarioSpec s;
  s.name = "placed";
  for (std::size_t u = 0; u < enb_of_ue.size(); ++u) {
    const auto p = enbs[enb_of_ue[u]].position;
    const double norm = std::hypot(p.x, p.y);
    const double jitter = 3.0 * static_cast<double>(u % 4);
    s.ue_positions.push_back({p.x - (60.0 + jitter) * p.x / norm, p.y - (60.0 + jitter) * p.y / norm});
  }
  s.clusters = {{{0.0, 0.0}, 500.0, static_cast<int>(enb_of_ue.size())}};
  return s;
}

double warm_score(const ransim::ScenarioSpec& s) {
  auto st = ransim::make_network(s, {30, 30, 30}, {});
  ransim::advance(st, 8000);
  return total_score(st, st.clock_ms).value;
}

}  // namespace

TEST_CASE("experience anchors") {
  CHECK(ue_experience(0.0) == 0.0);
  CHECK(ue_experience(5e5) == 1.0);
  CHECK(std::abs(ue_experience(5e6) - std::log(9991.0) / std::log(1000.0)) <= 1e-12);
  CHECK(ue_experience(5e6) == doctest::Approx(1.3332).epsilon(1e-4));
  CHECK_THROWS(ue_experience(-1.0));
}

TEST_CASE("unit anchor holds for any alpha") {
  for (double alpha : {1.5, 2.0, 10.0, 1000.0, 1e6}) {
    ScoreParams p;
    p.alpha = alpha;
    CHECK(ue_experience(p.reference_bytes, p) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("concave and monotone") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5e6);
  for (int i = 0; i < 2000; ++i) {
    double r1 = u(rng), r2 = u(rng);
    if (r1 > r2) std::swap(r1, r2);
    const double d = u(rng) * 0.1;
    CHECK(ue_experience(r1 + d) - ue_experience(r1) >= ue_experience(r2 + d) - ue_experience(r2) - 1e-12);
    CHECK(ue_experience(r1 + d) >= ue_experience(r1));
  }
}

TEST_CASE("param validation") {
  ScoreParams p;
  CHECK_NOTHROW(p.validate());
  p.alpha = 1.0;
  CHECK_THROWS(p.validate());
  p = {};
  p.window_ms = 0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("total score of starved and exact-reference UEs") {
  auto st = empty_state(12, 4000);
  CHECK(total_score(st, 4000).value == 0.0);
  for (int u = 0; u < 12; ++u) {
    st.rx_history[u].push_back({2500, 2e5});
    st.rx_history[u].push_back({4000, 3e5});
  }
  const auto snap = total_score(st, 4000);
  CHECK(snap.value == 12.0);
  CHECK_FALSE(snap.truncated);
}

TEST_CASE("window boundaries are half-open") {
  auto st = empty_state(1, 4000);
  st.rx_history[0].push_back({2000, 1e9});  // exactly at window start: excluded
  st.rx_history[0].push_back({4000, 5e5});
  CHECK(total_score(st, 4000).value == 1.0);
}

TEST_CASE("window truncated before two seconds") {
  auto st = empty_state(2, 1000);
  const auto snap = total_score(st, 1000);
  CHECK(snap.truncated);
  CHECK(snap.value == 0.0);
}

TEST_CASE("out of range queries") {
  auto st = empty_state(1, 6000);
  CHECK_THROWS_AS(total_score(st, 6010), std::out_of_range);
  CHECK_THROWS_AS(total_score(st, 5000), std::out_of_range);  // history retained from 4000
  CHECK_NOTHROW(total_score(st, 6000));
}

TEST_CASE("more bytes never lowers the total") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2e6);
  for (int trial = 0; trial < 100; ++trial) {
    auto st = empty_state(5, 4000);
    for (int k = 0; k < 5; ++k) st.rx_history[k].push_back({3000, u(rng)});
    const double before = total_score(st, 4000).value;
    st.rx_history[trial % 5].back().bytes += u(rng);
    CHECK(total_score(st, 4000).value >= before);
  }
}

TEST_CASE("balanced split beats a single crowded cell") {
  std::vector<int> crowded(12, 0), balanced;
  for (int u = 0; u < 12; ++u) balanced.push_back(u % 3);
  const double c = warm_score(placed(crowded));
  const double b = warm_score(placed(balanced));
  CHECK(b > c);
  // 8 Mbps per cell shared by four UEs is exactly the reference rate.
  CHECK(b == doctest::Approx(12.0).epsilon(1e-9));
  // One cell capped at 8 Mbps over twelve UEs.
  CHECK(c == doctest::Approx(12.0 * ue_experience(8e6 / 8.0 * 2.0 / 12.0)).epsilon(1e-9));
}
