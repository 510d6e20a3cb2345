#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ecm {

using cplx = std::complex<double>;

enum class PulseKind { rect, lfm };

// Samples sit at cell midpoints of a grid centred on t = 0.
struct Pulse {
    std::vector<cplx> samples;
    double sample_rate = 0.0;
    double duration = 0.0;
    double bandwidth = 0.0;  // chirp sweep, 0 for rect
    PulseKind kind = PulseKind::rect;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t m) const;
    double energy() const;
};

Pulse rect_pulse(double pulse_width_s, double sample_rate_hz);
Pulse lfm_pulse(double pulse_width_s, double bandwidth_hz, double sample_rate_hz);

// s is 1-based, as u_1 carries no offset
Pulse subarray_waveform(int s, double subarray_offset_hz, const Pulse& base);

cplx cross_correlation_at_zero(const Pulse& a, const Pulse& b);

}  // namespace ecm
