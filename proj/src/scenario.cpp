#include "ecm/scenario.hpp"

#include <cmath>
#include <string>

#include "ecm/error.hpp"

namespace ecm {

Direction::Direction(double azimuth_rad, double elevation_rad)
    : azimuth(azimuth_rad), elevation(elevation_rad),
      cosine(std::cos(azimuth_rad) * std::cos(elevation_rad))
{
}

Direction Scenario::direction(double azimuth_rad, double range_m) const
{
    return Direction(azimuth_rad, elevation_from_range(platform_height_m, range_m));
}

Direction Scenario::target_direction() const
{
    return direction(target.azimuth_rad, target.range_m);
}

Direction Scenario::jammer_direction() const
{
    return direction(jammer.azimuth_rad, jammer.range_m);
}

RadarConfig RadarConfig::with_subarrays(int s) const
{
    RadarConfig out = *this;
    out.subarrays = s;
    if (!explicit_sample_rate)
        out.sample_rate_hz = default_sample_rate(bandwidth_hz, s, subarray_offset_hz);
    return out;
}

double default_sample_rate(double bandwidth_hz, int subarrays, double subarray_offset_hz)
{
    return 2.0 * (bandwidth_hz + (subarrays - 1) * subarray_offset_hz);
}

RadarConfig default_radar(const Scenario& scn, int subarrays)
{
    RadarConfig cfg;
    cfg.spacing_m = scn.wavelength() / 2.0;
    return cfg.with_subarrays(subarrays);
}

Direction beam_direction(const RadarConfig& cfg, const Scenario& scn)
{
    double az = cfg.beam_azimuth_rad.value_or(scn.target.azimuth_rad);
    double r = cfg.beam_range_m.value_or(scn.target.range_m);
    return scn.direction(az, r);
}

double elevation_from_range(double height_m, double range_m)
{
    if (!(range_m > 0.0))
        throw Error(Errc::bad_range, "range must be positive");
    if (height_m < 0.0 || height_m > range_m)
        throw Error(Errc::geometry, "platform height " + std::to_string(height_m) +
                                        " m exceeds slant range " + std::to_string(range_m) + " m");
    return std::asin(height_m / range_m);
}

double range_resolution(double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw Error(Errc::bad_pulse, "bandwidth must be positive");
    return kSpeedOfLight / (2.0 * bandwidth_hz);
}

double max_doppler_hz(const Scenario& scn)
{
    return 2.0 * (std::abs(scn.platform_velocity_mps) + std::abs(scn.target.velocity_mps)) /
           scn.wavelength();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

PowerLevels db_conversions(double snr_db, double jnr_db, double inr_db, double noise_power)
{
    if (!(noise_power > 0.0))
        throw Error(Errc::bad_noise_power, "noise power must be positive");
    return {noise_power * db_to_linear(snr_db), noise_power * db_to_linear(jnr_db),
            noise_power * db_to_linear(inr_db)};
}

void validate(const Scenario& scn)
{
    if (!(scn.carrier_hz > 0.0))
        throw Error(Errc::bad_carrier, "carrier frequency must be positive");
    if (!(scn.noise_power > 0.0))
        throw Error(Errc::bad_noise_power, "noise power must be positive");
    if (!(scn.target.range_m > 0.0) || !(scn.jammer.range_m > 0.0))
        throw Error(Errc::bad_range, "ranges must be positive");
    if (!(scn.platform_height_m >= 0.0) || scn.target.range_m <= scn.platform_height_m ||
        scn.jammer.range_m <= scn.platform_height_m)
        throw Error(Errc::geometry, "target and jammer ranges must exceed the platform height");
    if (scn.target_power < 0.0 || scn.echo_power < 0.0)
        throw Error(Errc::bad_power, "powers must be non-negative");
}

void validate(const RadarConfig& cfg, const Scenario& scn, bool strict_paper_mode)
{
    if (cfg.tx_count < 1 || cfg.rx_count < 1 || cfg.subarrays < 1)
        throw Error(Errc::bad_array_size, "element and subarray counts must be >= 1");
    if (cfg.tx_count % cfg.subarrays != 0)
        throw Error(Errc::subarray_partition, "subarray count " + std::to_string(cfg.subarrays) +
                                                  " does not divide " +
                                                  std::to_string(cfg.tx_count));
    if (!(cfg.pulse_width_s > 0.0) || !(cfg.bandwidth_hz >= 0.0))
        throw Error(Errc::bad_pulse, "pulse width must be positive, bandwidth non-negative");
    if (cfg.subarrays > 1 && cfg.subarray_offset_hz < cfg.bandwidth_hz)
        throw Error(Errc::orthogonality, "subarray offset must be at least the bandwidth");
    double need = default_sample_rate(cfg.bandwidth_hz, cfg.subarrays, cfg.subarray_offset_hz);
    if (cfg.sample_rate_hz < need * (1.0 - 1e-12))
        throw Error(Errc::undersampled, "sample rate below " + std::to_string(need) + " Hz");
    if (!(cfg.spacing_m > 0.0))
        throw Error(Errc::spacing_mismatch, "element spacing must be positive");
    if (strict_paper_mode && std::abs(cfg.spacing_m - scn.wavelength() / 2.0) > 1e-9)
        throw Error(Errc::spacing_mismatch, "strict mode requires half-wavelength spacing");
}

}  // namespace ecm
