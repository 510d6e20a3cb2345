#pragma once

#include <string>
#include <vector>

#include "ecm/array_models.hpp"
#include "ecm/waveforms.hpp"

namespace ecm {

enum class JammerMode { sf, af };
enum class Method { numeric, closed_form };

const char* mode_name(JammerMode m);
const char* method_name(Method m);

struct JammerSpec {
    int antenna_count = 1;
    double offset_hz = 0.0;       // step between adjacent antennas
    double spacing_m = 0.0149896229;
    std::vector<double> amplitudes{1.0};
    JammerMode mode = JammerMode::sf;

    double amplitude_sum() const;
    double power_sum() const;
};

// equal split of the total power over the antennas
JammerSpec make_jammer(int antenna_count, double offset_hz, double power_sum, JammerMode mode,
                       double spacing_m);

void validate(const JammerSpec& spec, const Scenario& scn, bool strict_paper_mode = false);

// per-antenna constant phase exp(j 2pi f0 tau_q); all ones for SF
CVector antenna_phases(const JammerSpec& spec, const Scenario& scn);

CVector jammer_phase_vector(const JammerSpec& spec, double t, double tau_j, const Scenario& scn);

// unit-amplitude integral of exp(j 2pi (q df' + extra) t)|A(t)|^2 for each antenna q
std::vector<cplx> antenna_integrals(const JammerSpec& spec, const Pulse& pulse, double extra_hz);

cplx jamming_factor_pa(const JammerSpec& spec, const Pulse& pulse, cplx gain, const Scenario& scn,
                       Method method);

CMatrix leakage_matrix_fdamimo(const JammerSpec& spec, const Pulse& pulse, cplx subarray_gain,
                               const RadarConfig& cfg, const Scenario& scn, Method method);

struct LeakageFactor {
    cplx pa_scalar;
    CMatrix fdamimo_matrix;
    cplx pa_gain;        // E_t toward the jammer
    cplx subarray_gain;  // subarray E_t toward the jammer
    JammerMode mode = JammerMode::sf;
    Method method = Method::numeric;
};

LeakageFactor leakage_factor(const JammerSpec& spec, const Pulse& pulse, const RadarConfig& cfg,
                             const Scenario& scn, Method method);

CVector jamming_snapshot(ArrayCase c, const LeakageFactor& leak, const RadarConfig& cfg,
                         const Scenario& scn);

CVector reflected_echo(cplx xi_v, ArrayCase c, const RadarConfig& cfg, const Scenario& scn);

// per-antenna amplitude^2 needed for false targets at least as strong as the target
double required_jamming_power(int coherent_count, double target_power, cplx gain);

struct OffsetWindow {
    double lo;
    double hi;
    bool contains(double offset_hz) const { return offset_hz >= lo && offset_hz <= hi; }
};

OffsetWindow offset_window_mf(int antenna_count, double pulse_width_s, double bandwidth_hz,
                              double subarray_offset_hz);

double sinc(double x);

}  // namespace ecm
