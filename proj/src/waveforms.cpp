#include "ecm/waveforms.hpp"

#include <cmath>

#include "ecm/error.hpp"
#include "ecm/scenario.hpp"

namespace ecm {

namespace {

std::size_t sample_count(double pulse_width_s, double sample_rate_hz)
{
    if (!(pulse_width_s > 0.0) || !(sample_rate_hz > 0.0))
        throw Error(Errc::bad_pulse, "pulse width and sample rate must be positive");
    double n = std::round(pulse_width_s * sample_rate_hz);
    if (n < 16.0)
        throw Error(Errc::too_few_samples, "pulse needs at least 16 samples, got " +
                                               std::to_string(static_cast<long>(n)));
    return static_cast<std::size_t>(n);
}

}  // namespace

double Pulse::time_at(std::size_t m) const
{
    double span = static_cast<double>(samples.size()) / sample_rate;
    return -0.5 * span + (static_cast<double>(m) + 0.5) / sample_rate;
}

double Pulse::energy() const
{
    double e = 0.0;
    for (const auto& x : samples)
        e += std::norm(x);
    return e / sample_rate;
}

Pulse rect_pulse(double pulse_width_s, double sample_rate_hz)
{
    std::size_t n = sample_count(pulse_width_s, sample_rate_hz);
    Pulse p;
    p.sample_rate = sample_rate_hz;
    p.duration = pulse_width_s;
    p.kind = PulseKind::rect;
    // unit energy on the realised grid; equals 1/sqrt(Tp) when Tp*fs is integral
    double amp = std::sqrt(sample_rate_hz / static_cast<double>(n));
    p.samples.assign(n, cplx(amp, 0.0));
    return p;
}

Pulse lfm_pulse(double pulse_width_s, double bandwidth_hz, double sample_rate_hz)
{
    if (bandwidth_hz < 0.0)
        throw Error(Errc::bad_pulse, "bandwidth must be non-negative");
    if (bandwidth_hz == 0.0)
        return rect_pulse(pulse_width_s, sample_rate_hz);
    if (sample_rate_hz < 2.0 * bandwidth_hz)
        throw Error(Errc::undersampled, "LFM needs fs >= 2B");
    Pulse p = rect_pulse(pulse_width_s, sample_rate_hz);
    p.kind = PulseKind::lfm;
    p.bandwidth = bandwidth_hz;
    double rate = bandwidth_hz / pulse_width_s;
    for (std::size_t m = 0; m < p.size(); ++m) {
        double t = p.time_at(m);
        p.samples[m] *= std::polar(1.0, kPi * rate * t * t);
    }
    return p;
}

Pulse subarray_waveform(int s, double subarray_offset_hz, const Pulse& base)
{
    if (s < 1)
        throw Error(Errc::bad_array_size, "subarray index is 1-based");
    Pulse p = base;
    double f = (s - 1) * subarray_offset_hz;
    if (f == 0.0)
        return p;
    for (std::size_t m = 0; m < p.size(); ++m)
        p.samples[m] *= std::polar(1.0, 2.0 * kPi * f * p.time_at(m));
    return p;
}

cplx cross_correlation_at_zero(const Pulse& a, const Pulse& b)
{
    if (a.size() != b.size() || a.sample_rate != b.sample_rate)
        throw Error(Errc::length_mismatch, "pulses differ in length or sample rate");
    cplx acc = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        acc += a.samples[m] * std::conj(b.samples[m]);
    return acc / a.sample_rate;
}

}  // namespace ecm
