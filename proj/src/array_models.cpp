#include "ecm/array_models.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "ecm/error.hpp"

namespace ecm {

std::string case_label(ArrayCase c, int subarrays)
{
    if (c == ArrayCase::pa)
        return "pa";
    return "fdamimo" + std::to_string(subarrays);
}

CVector uniform_steering(int count, double spacing_per_wavelength, const Direction& dir)
{
    if (count < 1)
        throw Error(Errc::bad_array_size, "steering vector needs at least one entry");
    CVector v(count);
    double step = 2.0 * kPi * spacing_per_wavelength * dir.cosine;
    v(0) = cplx(1.0, 0.0);
    for (int k = 1; k < count; ++k)
        v(k) = std::polar(1.0, step * k);
    return v;
}

CVector range_steering(int subarrays, double subarray_offset_hz, double range_m)
{
    if (subarrays < 1)
        throw Error(Errc::bad_array_size, "range steering needs at least one subarray");
    CVector v(subarrays);
    v(0) = cplx(1.0, 0.0);
    // reduce the cycle count before scaling by 2pi to keep the phase accurate
    double cycles = 2.0 * range_m / kSpeedOfLight * subarray_offset_hz;
    for (int s = 1; s < subarrays; ++s) {
        double frac = std::fmod(cycles * s, 1.0);
        v(s) = std::polar(1.0, -2.0 * kPi * frac);
    }
    return v;
}

CVector receive_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir)
{
    return uniform_steering(cfg.rx_count, cfg.spacing_m / scn.wavelength(), dir);
}

CVector subarray_phase_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir)
{
    return uniform_steering(cfg.subarrays, cfg.subarray_size() * cfg.spacing_m / scn.wavelength(),
                            dir);
}

CVector composite_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir,
                           double range_m)
{
    CVector b = subarray_phase_steering(cfg, scn, dir);
    CVector d = range_steering(cfg.subarrays, cfg.subarray_offset_hz, range_m);
    return b.cwiseProduct(d);
}

CVector transmit_weights(int count, double spacing_per_wavelength, const Direction& dir)
{
    return uniform_steering(count, spacing_per_wavelength, dir) / std::sqrt(double(count));
}

cplx transmit_gain(const CVector& weights, const CVector& steering)
{
    if (weights.size() != steering.size())
        throw Error(Errc::length_mismatch, "weights and steering differ in length");
    return weights.dot(steering);  // Eigen's dot conjugates the left operand
}

int coherent_count(ArrayCase c, const RadarConfig& cfg)
{
    return c == ArrayCase::pa ? cfg.tx_count : cfg.subarray_size();
}

cplx transmit_gain_toward(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                          const Direction& dir)
{
    int count = coherent_count(c, cfg);
    double sp = cfg.spacing_m / scn.wavelength();
    CVector w = transmit_weights(count, sp, beam_direction(cfg, scn));
    return transmit_gain(w, uniform_steering(count, sp, dir));
}

Eigen::Index snapshot_size(ArrayCase c, const RadarConfig& cfg)
{
    return c == ArrayCase::pa ? cfg.rx_count : Eigen::Index(cfg.subarrays) * cfg.rx_count;
}

CVector virtual_steering(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                         const Direction& dir, double range_m)
{
    CVector ar = receive_steering(cfg, scn, dir);
    if (c == ArrayCase::pa)
        return ar;
    CVector cv = composite_steering(cfg, scn, dir, range_m);
    return Eigen::kroneckerProduct(cv, ar).eval();
}

CVector target_snapshot_pa(cplx xi, const RadarConfig& cfg, const Scenario& scn)
{
    return xi * std::sqrt(double(cfg.tx_count)) *
           receive_steering(cfg, scn, scn.target_direction());
}

CVector target_snapshot_fdamimo(cplx xi, const RadarConfig& cfg, const Scenario& scn)
{
    return xi * std::sqrt(double(cfg.subarray_size())) *
           virtual_steering(ArrayCase::fdamimo, cfg, scn, scn.target_direction(),
                            scn.target.range_m);
}

CVector target_snapshot(ArrayCase c, cplx xi, const RadarConfig& cfg, const Scenario& scn)
{
    return c == ArrayCase::pa ? target_snapshot_pa(xi, cfg, scn)
                              : target_snapshot_fdamimo(xi, cfg, scn);
}

}  // namespace ecm
