#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecm/array_models.hpp"
#include "ecm/fda_jammer.hpp"
#include "ecm/waveforms.hpp"

namespace ecm {

struct RxOptions {
    bool include_target = true;
    bool include_jammer = true;
    bool include_noise = false;
    cplx target_amplitude{1.0, 0.0};  // xi_t
    double center_range_m = 6000.0;
    double half_window_m = 400.0;
    std::optional<double> downconversion_range_m;  // defaults to the jammer
    std::vector<bool> active_antennas;             // empty: every jammer antenna radiates
};

// Rows are receive elements. Column k holds absolute sample index first_index + k.
struct RxData {
    double sample_rate = 0.0;
    long first_index = 0;
    CMatrix samples;
    double target_delay_rounding_s = 0.0;
    double jammer_delay_rounding_s = 0.0;
};

RxData synthesize_rx(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                     const JammerSpec* spec, const Pulse& base, const RxOptions& opts,
                     std::uint64_t seed);

struct RangeProfile {
    std::vector<double> range_m;
    std::vector<double> power_db;
    std::string channel;
    int element = 0;

    double bin_spacing() const;
};

RangeProfile matched_filter_profile(const RxData& rx, const Pulse& reference, int element,
                                    const std::string& channel, double center_range_m,
                                    double half_window_m);

struct Peak {
    double range_m;
    double power_db;
};

struct PeakList {
    std::vector<Peak> peaks;
    double detection_threshold_db = 0.0;
};

PeakList detect_peaks(const RangeProfile& profile, double threshold_db);
double profile_max_db(const RangeProfile& profile);

struct FalseTargetPrediction {
    std::vector<double> ranges_m;
    bool inside_window = true;
    std::string warning;
};

FalseTargetPrediction predict_false_targets(const JammerSpec& spec, double jammer_range_m,
                                            const RadarConfig& cfg, const Scenario& scn);

}  // namespace ecm
