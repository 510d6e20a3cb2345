#include "ecm/fda_jammer.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "ecm/error.hpp"

namespace ecm {

namespace {

constexpr int kOversample = 16;

bool integral(double x) { return std::abs(x - std::round(x)) < 1e-9; }

cplx combine(const JammerSpec& spec, const CVector& g, const std::vector<cplx>& per_antenna)
{
    cplx acc = 0.0;
    for (int q = 0; q < spec.antenna_count; ++q)
        acc += spec.amplitudes[q] * g(q) * per_antenna[q];
    return acc;
}

cplx weighted_sinc_sum(const JammerSpec& spec, const CVector& g, double pulse_width_s)
{
    cplx acc = 0.0;
    for (int q = 0; q < spec.antenna_count; ++q)
        acc += spec.amplitudes[q] * g(q) * sinc(pulse_width_s * q * spec.offset_hz);
    return acc;
}

}  // namespace

std::vector<cplx> antenna_integrals(const JammerSpec& spec, const Pulse& pulse, double extra_hz)
{
    const double cell = 1.0 / pulse.sample_rate;
    const double sub = cell / kOversample;
    std::vector<cplx> acc(spec.antenna_count, 0.0);
    for (std::size_t m = 0; m < pulse.size(); ++m) {
        double w = std::norm(pulse.samples[m]) * sub;
        double t0 = pulse.time_at(m) - 0.5 * cell;
        for (int k = 0; k < kOversample; ++k) {
            double t = t0 + (k + 0.5) * sub;
            cplx base = w * std::polar(1.0, 2.0 * kPi * extra_hz * t);
            cplx step = std::polar(1.0, 2.0 * kPi * spec.offset_hz * t);
            cplx term = base;
            for (int q = 0; q < spec.antenna_count; ++q) {
                acc[q] += term;
                term *= step;
            }
        }
    }
    return acc;
}

const char* mode_name(JammerMode m) { return m == JammerMode::sf ? "SF" : "AF"; }

const char* method_name(Method m) { return m == Method::numeric ? "numeric" : "closed_form"; }

double sinc(double x)
{
    if (std::abs(x) < 1e-12)
        return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

double JammerSpec::amplitude_sum() const
{
    return std::accumulate(amplitudes.begin(), amplitudes.end(), 0.0);
}

double JammerSpec::power_sum() const
{
    double s = 0.0;
    for (double a : amplitudes)
        s += a * a;
    return s;
}

JammerSpec make_jammer(int antenna_count, double offset_hz, double power_sum, JammerMode mode,
                       double spacing_m)
{
    if (antenna_count < 1)
        throw Error(Errc::bad_jammer_count, "jammer needs at least one antenna");
    JammerSpec spec;
    spec.antenna_count = antenna_count;
    spec.offset_hz = offset_hz;
    spec.spacing_m = spacing_m;
    spec.mode = mode;
    spec.amplitudes.assign(antenna_count, std::sqrt(power_sum / antenna_count));
    return spec;
}

void validate(const JammerSpec& spec, const Scenario& scn, bool strict_paper_mode)
{
    if (spec.antenna_count < 1)
        throw Error(Errc::bad_jammer_count, "jammer needs at least one antenna");
    if (!(spec.offset_hz >= 0.0))
        throw Error(Errc::bad_jammer_offset, "jamming frequency offset must be non-negative");
    if (int(spec.amplitudes.size()) != spec.antenna_count)
        throw Error(Errc::bad_jammer_amplitude, "need one amplitude per jammer antenna");
    for (double a : spec.amplitudes)
        if (!(a > 0.0))
            throw Error(Errc::bad_jammer_amplitude, "jammer amplitudes must be positive");
    if (strict_paper_mode && std::abs(spec.spacing_m - scn.wavelength() / 2.0) > 1e-9)
        throw Error(Errc::spacing_mismatch, "strict mode requires half-wavelength jammer spacing");
}

CVector antenna_phases(const JammerSpec& spec, const Scenario& scn)
{
    if (spec.mode == JammerMode::sf)
        return CVector::Ones(spec.antenna_count);
    return uniform_steering(spec.antenna_count, spec.spacing_m / scn.wavelength(),
                            scn.jammer_direction());
}

CVector jammer_phase_vector(const JammerSpec& spec, double t, double tau_j, const Scenario& scn)
{
    CVector v = antenna_phases(spec, scn);
    for (int q = 1; q < spec.antenna_count; ++q)
        v(q) *= std::polar(1.0, 2.0 * kPi * q * spec.offset_hz * (t - tau_j));
    return v;
}

cplx jamming_factor_pa(const JammerSpec& spec, const Pulse& pulse, cplx gain, const Scenario& scn,
                       Method method)
{
    CVector g = antenna_phases(spec, scn);
    if (method == Method::closed_form) {
        if (pulse.kind != PulseKind::rect)
            throw Error(Errc::unsupported_combination,
                        "closed-form jamming factor assumes a rectangular envelope");
        return gain * weighted_sinc_sum(spec, g, pulse.duration);
    }
    return gain * combine(spec, g, antenna_integrals(spec, pulse, 0.0));
}

CMatrix leakage_matrix_fdamimo(const JammerSpec& spec, const Pulse& pulse, cplx subarray_gain,
                               const RadarConfig& cfg, const Scenario& scn, Method method)
{
    const int S = cfg.subarrays;
    CVector g = antenna_phases(spec, scn);
    CMatrix out = CMatrix::Zero(S, S);
    if (method == Method::closed_form) {
        if (pulse.kind != PulseKind::rect)
            throw Error(Errc::unsupported_combination,
                        "closed-form leakage assumes a rectangular envelope");
        if (S > 1 && !integral(pulse.duration * cfg.subarray_offset_hz))
            throw Error(Errc::closed_form_precondition,
                        "pulse width times subarray offset must be an integer");
        if (spec.antenna_count > 1 &&
            !(spec.offset_hz < 1.0 / ((spec.antenna_count - 1) * pulse.duration)))
            throw Error(Errc::closed_form_precondition,
                        "jamming offset must stay below 1/((Q-1)Tp)");
        cplx diag = subarray_gain * weighted_sinc_sum(spec, g, pulse.duration);
        for (int s = 0; s < S; ++s)
            out(s, s) = diag;
        return out;
    }
    // entries depend only on v-u, so integrate each diagonal once
    for (int k = -(S - 1); k <= S - 1; ++k) {
        cplx value =
            subarray_gain * combine(spec, g, antenna_integrals(spec, pulse, k * cfg.subarray_offset_hz));
        for (int u = 0; u < S; ++u) {
            int v = u + k;
            if (v >= 0 && v < S)
                out(u, v) = value;
        }
    }
    return out;
}

LeakageFactor leakage_factor(const JammerSpec& spec, const Pulse& pulse, const RadarConfig& cfg,
                             const Scenario& scn, Method method)
{
    LeakageFactor lf;
    Direction jd = scn.jammer_direction();
    lf.pa_gain = transmit_gain_toward(ArrayCase::pa, cfg, scn, jd);
    lf.subarray_gain = transmit_gain_toward(ArrayCase::fdamimo, cfg, scn, jd);
    lf.pa_scalar = jamming_factor_pa(spec, pulse, lf.pa_gain, scn, method);
    lf.fdamimo_matrix = leakage_matrix_fdamimo(spec, pulse, lf.subarray_gain, cfg, scn, method);
    lf.mode = spec.mode;
    lf.method = method;
    return lf;
}

CVector jamming_snapshot(ArrayCase c, const LeakageFactor& leak, const RadarConfig& cfg,
                         const Scenario& scn)
{
    Direction jd = scn.jammer_direction();
    CVector ar = receive_steering(cfg, scn, jd);
    if (c == ArrayCase::pa)
        return leak.pa_scalar * ar;
    if (leak.fdamimo_matrix.rows() != cfg.subarrays)
        throw Error(Errc::case_mismatch, "leakage matrix does not match the subarray count");
    CVector cj = composite_steering(cfg, scn, jd, scn.jammer.range_m);
    CVector mixed = leak.fdamimo_matrix * cj;
    return Eigen::kroneckerProduct(mixed, ar).eval();
}

CVector reflected_echo(cplx xi_v, ArrayCase c, const RadarConfig& cfg, const Scenario& scn)
{
    Direction jd = scn.jammer_direction();
    cplx gain = transmit_gain_toward(c, cfg, scn, jd);
    return xi_v * gain * virtual_steering(c, cfg, scn, jd, scn.jammer.range_m);
}

double required_jamming_power(int coherent_count, double target_power, cplx gain)
{
    double g2 = std::norm(gain);
    if (g2 < 1e-300)
        throw Error(Errc::transmit_null, "jammer sits in a transmit null; no finite power suffices");
    return coherent_count * target_power / g2;
}

OffsetWindow offset_window_mf(int antenna_count, double pulse_width_s, double bandwidth_hz,
                              double subarray_offset_hz)
{
    if (antenna_count < 2)
        throw Error(Errc::undefined_window, "offset window needs at least two jammer antennas");
    double q1 = antenna_count - 1;
    return {1.0 / (pulse_width_s * q1), std::min(bandwidth_hz, subarray_offset_hz) / q1};
}

}  // namespace ecm
