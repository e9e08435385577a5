#include "ranbench/ransim/radio.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace ranbench::ransim {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

void RadioConfig::validate() const {
  if (enb_inter_distance_m <= 0 || bandwidth_hz <= 0 || beamwidth_deg <= 0)
    throw std::invalid_argument("radio: geometry and band must be positive");
  if (max_attenuation_db < 0) throw std::invalid_argument("radio: max_attenuation_db < 0");
  if (time_to_trigger_ms < 0) throw std::invalid_argument("radio: time_to_trigger_ms < 0");
  if (se_cap <= 0 || cbr_rate_bps <= 0) throw std::invalid_argument("radio: rate caps must be positive");
  if (tick_ms <= 0) throw std::invalid_argument("radio: tick_ms must be positive");
  if (history_retention_ms < tick_ms)
    throw std::invalid_argument("radio: history_retention_ms shorter than one tick");
  if (!(min_power_dbm < max_power_dbm))
    throw std::invalid_argument("radio: min_power_dbm must be below max_power_dbm");
}

double arena_radius(const RadioConfig& radio) {
  return radio.enb_inter_distance_m / 2.0 / std::cos(30.0 * kDeg);
}

std::vector<EnbConfig> make_triangle_enbs(const RadioConfig& radio,
                                          const std::vector<double>& powers_dbm) {
  if (powers_dbm.size() != 3) throw std::invalid_argument("make_triangle_enbs: need 3 powers");
  const double r = arena_radius(radio);
  // Bottom-left, bottom-right, top; each boresight points back at the origin.
  constexpr double angles[3] = {210.0, -30.0, 90.0};
  std::vector<EnbConfig> enbs(3);
  for (int i = 0; i < 3; ++i) {
    EnbConfig& e = enbs[i];
    e.id = i + 1;
    e.position = {r * std::cos(angles[i] * kDeg), r * std::sin(angles[i] * kDeg)};
    e.boresight_deg = normalize_angle(angles[i] + 180.0);
    e.tx_power_dbm = powers_dbm[i];
    e.subband_index = i;
    e.bandwidth_hz = radio.bandwidth_hz;
  }
  return enbs;
}

double normalize_angle(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a > 180.0) a -= 360.0;
  if (a < -180.0) a += 360.0;
  return a;
}

double offset_angle(const EnbConfig& enb, Vec2 ue) {
  const double bearing = std::atan2(ue.y - enb.position.y, ue.x - enb.position.x) / kDeg;
  return normalize_angle(bearing - enb.boresight_deg);
}

double antenna_gain(double offset_deg, double beamwidth_deg, double max_attenuation_db) {
  const double ratio = offset_deg / beamwidth_deg;
  return -std::min(12.0 * ratio * ratio, max_attenuation_db);
}

double pathloss(double distance_m) {
  return 128.1 + 37.6 * std::log10(std::max(distance_m, 10.0) / 1000.0);
}

double noise_dbm(const RadioConfig& radio, double band_hz) {
  return radio.thermal_noise_dbm_hz + 10.0 * std::log10(band_hz) + radio.noise_figure_db;
}

}  // namespace ranbench::ransim
