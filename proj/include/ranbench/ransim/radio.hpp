#pragma once

#include <cmath>
#include <vector>

namespace ranbench::ransim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Radio and mobility constants of the downlink model. Every field can be
/// overridden from the config file; defaults describe the 3-cell reference
/// deployment.
struct RadioConfig {
  double enb_inter_distance_m = 1000.0;
  double bandwidth_hz = 5e6;  // full system band, split in thirds
  double beamwidth_deg = 70.0;
  double max_attenuation_db = 20.0;
  double thermal_noise_dbm_hz = -174.0;
  double noise_figure_db = 9.0;

  double a2_threshold_db = -6.0;
  double a4_offset_db = 1.0;
  int time_to_trigger_ms = 256;

  double se_cap = 4.8;          // bit/s/Hz
  double cbr_rate_bps = 20e6;

  int tick_ms = 10;
  int history_retention_ms = 2000;

  double min_power_dbm = 20.0;
  double max_power_dbm = 40.0;

  void validate() const;
};

struct EnbConfig {
  int id = 1;  // 1-based, as reported externally
  Vec2 position;
  double boresight_deg = 0.0;
  double tx_power_dbm = 30.0;
  int subband_index = 0;
  double bandwidth_hz = 5e6;
};

/// Three eNBs on an equilateral triangle centred on the origin, each
/// pointing at the centroid and owning one third of the band.
std::vector<EnbConfig> make_triangle_enbs(const RadioConfig& radio,
                                          const std::vector<double>& powers_dbm);

/// Radius of the circle through the three eNBs; UEs are sampled inside it.
double arena_radius(const RadioConfig& radio);

/// Parabolic pattern: -min(12 (offset/beamwidth)^2, max_attenuation).
double antenna_gain(double offset_deg, double beamwidth_deg = 70.0,
                    double max_attenuation_db = 20.0);

/// Macro-cell log-distance loss, distance floored at 10 m.
double pathloss(double distance_m);

/// Wraps an angle into [-180, 180].
double normalize_angle(double deg);

/// Angle between the eNB boresight and the direction towards `ue`.
double offset_angle(const EnbConfig& enb, Vec2 ue);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Noise power (dBm) over `band_hz` including the receiver noise figure.
double noise_dbm(const RadioConfig& radio, double band_hz);

}  // namespace ranbench::ransim
