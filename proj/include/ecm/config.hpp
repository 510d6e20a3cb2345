#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecm/fda_jammer.hpp"
#include "ecm/scenario.hpp"
#include "ecm/spatial_filter.hpp"

namespace ecm {

// How the jammer amplitudes are chosen; exactly one source is active.
struct JammerPlan {
    JammerMode mode = JammerMode::sf;
    int antennas = 4;
    double offset_hz = 0.0;
    std::optional<double> spacing_m;  // unset: half wavelength
    std::optional<double> jnr_db;
    std::vector<double> rho;
    std::optional<double> threshold_scale;  // multiple of the per-antenna power threshold
};

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int points = 1;
    std::vector<double> values() const;
};

struct MfOptions {
    double center_range_m = 6000.0;
    double half_window_m = 400.0;
    bool noise = false;
    double threshold_db = -6.0;  // relative to the profile maximum
    int element = 0;
    int channel = 1;
    std::optional<double> downconversion_range_m;
};

struct SweepOptions {
    std::vector<int> subarrays{1};
    std::vector<int> antennas;  // empty: the jammer's own count
    Grid offsets;  // jammer offset grid for sinr-sweep / beampatterns
    Grid grid;     // azimuth (deg) or range (m) for beampatterns
    CovarianceMode covariance = CovarianceMode::monte_carlo;
    LeakageModel leakage = LeakageModel::full;
};

struct RunOptions {
    std::uint64_t seed = 1;
    int trials = 200;
    int threads = 1;
};

struct BenchConfig {
    std::string experiment = "sinr-sweep";
    Scenario scenario;
    RadarConfig radar;  // subarray count here is the S=1 template; sweeps override it
    std::string waveform = "lfm";
    bool strict_paper_mode = false;
    double snr_db = 10.0;
    double inr_db = 15.0;
    JammerPlan jammer;
    MfOptions mf;
    SweepOptions sweep;
    RunOptions run;
};

BenchConfig default_config(const std::string& experiment);
// `experiment`, when given, must agree with the file and supplies its defaults otherwise
BenchConfig load_config(const std::string& path, const std::string& experiment = "");
BenchConfig parse_config(const std::string& text, const std::string& experiment = "");
std::string canonical_config(const BenchConfig& cfg);
void validate(const BenchConfig& cfg);

RadarConfig radar_for(const BenchConfig& cfg, int subarrays);
Pulse base_pulse(const BenchConfig& cfg, const RadarConfig& radar);
ArrayCase case_for(int subarrays);
JammerSpec resolve_jammer(const BenchConfig& cfg, ArrayCase c, const RadarConfig& radar);

}  // namespace ecm
