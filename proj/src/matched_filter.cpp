#include "ecm/matched_filter.hpp"

#include <algorithm>
#include <cmath>

#include "ecm/error.hpp"
#include "ecm/random.hpp"

namespace ecm {

namespace {

long lag_of_range(double range_m, double fs) { return std::lround(2.0 * range_m / kSpeedOfLight * fs); }

// exp(-j 2pi f0 dt) with the cycle count reduced first
cplx carrier_phase(double carrier_hz, double dt)
{
    double cycles = std::fmod(carrier_hz * dt, 1.0);
    return std::polar(1.0, -2.0 * kPi * cycles);
}

struct LagSpan {
    long lo;
    long hi;
};

LagSpan lag_span(double center_m, double half_window_m, double fs)
{
    double lo = 2.0 * (center_m - half_window_m) / kSpeedOfLight * fs;
    double hi = 2.0 * (center_m + half_window_m) / kSpeedOfLight * fs;
    return {long(std::ceil(lo - 1e-9)), long(std::floor(hi + 1e-9))};
}

}  // namespace

RxData synthesize_rx(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                     const JammerSpec* spec, const Pulse& base, const RxOptions& opts,
                     std::uint64_t seed)
{
    const double fs = cfg.sample_rate_hz;
    if (std::abs(base.sample_rate - fs) > 1e-6 * fs)
        throw Error(Errc::case_mismatch, "pulse sample rate does not match the radar config");
    const long L = long(base.size());
    const int S = c == ArrayCase::pa ? 1 : cfg.subarrays;
    const int N = cfg.rx_count;
    const double sqrt_g = std::sqrt(double(coherent_count(c, cfg)));

    LagSpan span = lag_span(opts.center_range_m, opts.half_window_m, fs);
    RxData rx;
    rx.sample_rate = fs;
    rx.first_index = span.lo - L / 2;
    const long K = span.hi - span.lo + L;
    rx.samples = CMatrix::Zero(N, K);

    const double tau_ref =
        2.0 * opts.downconversion_range_m.value_or(spec ? scn.jammer.range_m : scn.target.range_m) /
        kSpeedOfLight;

    std::vector<Pulse> waves;
    for (int s = 1; s <= S; ++s)
        waves.push_back(subarray_waveform(s, cfg.subarray_offset_hz, base));

    auto place = [&](double range_m, const std::vector<cplx>& wave, const CVector& element_gain,
                     double& rounding) {
        double tau = 2.0 * range_m / kSpeedOfLight;
        long n_tau = std::lround(tau * fs);
        rounding = double(n_tau) / fs - tau;
        if (n_tau < span.lo || n_tau > span.hi)
            throw Error(Errc::delay_outside_window,
                        "echo at " + std::to_string(range_m) + " m lies outside the simulated window");
        long start = n_tau - L / 2 - rx.first_index;
        for (int n = 0; n < N; ++n)
            for (long m = 0; m < L; ++m)
                rx.samples(n, start + m) += element_gain(n) * wave[m];
    };

    if (opts.include_target) {
        Direction td = scn.target_direction();
        CVector b = c == ArrayCase::pa ? CVector::Ones(1) : subarray_phase_steering(cfg, scn, td);
        std::vector<cplx> wave(L, 0.0);
        for (int s = 0; s < S; ++s)
            for (long m = 0; m < L; ++m)
                wave[m] += b(s) * waves[s].samples[m];
        double tau_t = 2.0 * scn.target.range_m / kSpeedOfLight;
        cplx amp = opts.target_amplitude * sqrt_g * carrier_phase(scn.carrier_hz, tau_t - tau_ref);
        CVector gain = amp * receive_steering(cfg, scn, td);
        place(scn.target.range_m, wave, gain, rx.target_delay_rounding_s);
    }

    if (opts.include_jammer && spec) {
        Direction jd = scn.jammer_direction();
        CVector b = c == ArrayCase::pa ? CVector::Ones(1) : subarray_phase_steering(cfg, scn, jd);
        CVector g = antenna_phases(*spec, scn);
        std::vector<cplx> wave(L, 0.0);
        for (long m = 0; m < L; ++m) {
            double t = base.time_at(std::size_t(m));
            cplx offsets = 0.0;
            for (int q = 0; q < spec->antenna_count; ++q) {
                if (!opts.active_antennas.empty() && !opts.active_antennas.at(q))
                    continue;
                offsets += spec->amplitudes[q] * g(q) *
                           std::polar(1.0, 2.0 * kPi * q * spec->offset_hz * t);
            }
            cplx radar = 0.0;
            for (int s = 0; s < S; ++s)
                radar += b(s) * waves[s].samples[m];
            wave[m] = radar * offsets;
        }
        double tau_j = 2.0 * scn.jammer.range_m / kSpeedOfLight;
        cplx et = transmit_gain_toward(c, cfg, scn, jd);
        cplx amp = et * carrier_phase(scn.carrier_hz, tau_j - tau_ref);
        CVector gain = amp * receive_steering(cfg, scn, jd);
        place(scn.jammer.range_m, wave, gain, rx.jammer_delay_rounding_s);
    }

    if (opts.include_noise) {
        // per-sample variance sigma^2 fs leaves sigma^2 after the unit-energy filter
        double per_sample = scn.noise_power * fs;
        for (int n = 0; n < N; ++n) {
            Rng rng = stream_for(seed, std::uint64_t(n));
            for (long k = 0; k < K; ++k)
                rx.samples(n, k) += complex_gaussian(rng, per_sample);
        }
    }
    return rx;
}

double RangeProfile::bin_spacing() const
{
    if (range_m.size() < 2)
        return 0.0;
    return range_m[1] - range_m[0];
}

RangeProfile matched_filter_profile(const RxData& rx, const Pulse& reference, int element,
                                    const std::string& channel, double center_range_m,
                                    double half_window_m)
{
    if (std::abs(reference.sample_rate - rx.sample_rate) > 1e-6 * rx.sample_rate)
        throw Error(Errc::case_mismatch, "reference waveform sample rate differs from the data");
    if (element < 0 || element >= rx.samples.rows())
        throw Error(Errc::case_mismatch, "no such receive element");
    const long L = long(reference.size());
    LagSpan span = lag_span(center_range_m, half_window_m, rx.sample_rate);
    const long K = rx.samples.cols();
    if (span.lo - L / 2 < rx.first_index || span.hi - L / 2 + L > rx.first_index + K)
        throw Error(Errc::delay_outside_window, "profile window exceeds the synthesized data");

    RangeProfile prof;
    prof.channel = channel;
    prof.element = element;
    for (long lag = span.lo; lag <= span.hi; ++lag) {
        long start = lag - L / 2 - rx.first_index;
        cplx acc = 0.0;
        for (long m = 0; m < L; ++m)
            acc += rx.samples(element, start + m) * std::conj(reference.samples[m]);
        acc /= rx.sample_rate;
        double p = std::norm(acc);
        prof.range_m.push_back(kSpeedOfLight * double(lag) / (2.0 * rx.sample_rate));
        prof.power_db.push_back(p > 1e-30 ? 10.0 * std::log10(p) : -300.0);
    }
    return prof;
}

PeakList detect_peaks(const RangeProfile& profile, double threshold_db)
{
    PeakList out;
    out.detection_threshold_db = threshold_db;
    const auto& p = profile.power_db;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        // equal neighbours resolve toward the smaller range
        if (p[i] > p[i - 1] && p[i] >= p[i + 1] && p[i] > threshold_db)
            out.peaks.push_back({profile.range_m[i], p[i]});
    }
    return out;
}

double profile_max_db(const RangeProfile& profile)
{
    if (profile.power_db.empty())
        return -300.0;
    return *std::max_element(profile.power_db.begin(), profile.power_db.end());
}

FalseTargetPrediction predict_false_targets(const JammerSpec& spec, double jammer_range_m,
                                            const RadarConfig& cfg, const Scenario& scn)
{
    FalseTargetPrediction out;
    double dr = range_resolution(cfg.bandwidth_hz);
    Direction jd = scn.direction(scn.jammer.azimuth_rad, jammer_range_m);
    for (int q = 0; q < spec.antenna_count; ++q) {
        double r = jammer_range_m - cfg.pulse_width_s * spec.offset_hz * dr * q;
        if (spec.mode == JammerMode::af) {
            // printed AF correction, kept verbatim; it is ~1e-13 and not a length
            r -= q * cfg.pulse_width_s / (4.0 * cfg.bandwidth_hz) * jd.cosine;
        }
        out.ranges_m.push_back(r);
    }
    if (spec.antenna_count >= 2) {
        double df = cfg.subarrays > 1 ? cfg.subarray_offset_hz : cfg.bandwidth_hz;
        OffsetWindow w = offset_window_mf(spec.antenna_count, cfg.pulse_width_s, cfg.bandwidth_hz, df);
        if (!w.contains(spec.offset_hz)) {
            out.inside_window = false;
            out.warning = "offset outside [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                          "] Hz; peaks may merge or vanish";
        }
    }
    return out;
}

}  // namespace ecm
