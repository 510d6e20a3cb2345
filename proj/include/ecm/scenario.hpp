#pragma once

#include <optional>

namespace ecm {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Array phases only ever see cos(azimuth)*cos(elevation); keep it with the angles.
struct Direction {
    double azimuth = 0.0;
    double elevation = 0.0;
    double cosine = 1.0;

    Direction() = default;
    Direction(double azimuth_rad, double elevation_rad);
};

struct TargetSite {
    double range_m = 6000.0;
    double azimuth_rad = 0.0;
    double velocity_mps = 25.0;
};

struct JammerSite {
    double range_m = 6000.0;  // one-way
    double azimuth_rad = 0.0;
};

struct Scenario {
    double carrier_hz = 10e9;
    double platform_height_m = 2000.0;
    double platform_velocity_mps = 75.0;
    TargetSite target;
    JammerSite jammer;
    double noise_power = 1.0;
    double target_power = 10.0;
    double echo_power = 31.622776601683793;

    double wavelength() const { return kSpeedOfLight / carrier_hz; }
    Direction direction(double azimuth_rad, double range_m) const;
    Direction target_direction() const;
    Direction jammer_direction() const;
};

struct RadarConfig {
    int tx_count = 16;
    int rx_count = 16;
    int subarrays = 1;
    double spacing_m = 0.0149896229;
    double pulse_width_s = 10e-6;
    double bandwidth_hz = 10e6;
    double subarray_offset_hz = 10e6;
    double sample_rate_hz = 20e6;
    bool explicit_sample_rate = false;
    // transmit beam; unset means the target
    std::optional<double> beam_azimuth_rad;
    std::optional<double> beam_range_m;

    int subarray_size() const { return tx_count / subarrays; }
    RadarConfig with_subarrays(int s) const;
};

double default_sample_rate(double bandwidth_hz, int subarrays, double subarray_offset_hz);

// Reference radar for the given carrier: half-wavelength spacing, default sample rate.
RadarConfig default_radar(const Scenario& scn, int subarrays = 1);

Direction beam_direction(const RadarConfig& cfg, const Scenario& scn);

double elevation_from_range(double height_m, double range_m);
double range_resolution(double bandwidth_hz);
double max_doppler_hz(const Scenario& scn);

struct PowerLevels {
    double target_power;
    double jamming_power_sum;
    double echo_power;
};

PowerLevels db_conversions(double snr_db, double jnr_db, double inr_db, double noise_power);
double db_to_linear(double db);
double linear_to_db(double value);

void validate(const Scenario& scn);
void validate(const RadarConfig& cfg, const Scenario& scn, bool strict_paper_mode = false);

}  // namespace ecm
