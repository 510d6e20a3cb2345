#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecm/config.hpp"
#include "ecm/matched_filter.hpp"
#include "ecm/spatial_filter.hpp"

namespace ecm {

struct CatalogEntry {
    std::string id;
    std::string experiment;
    std::string figures;
    std::string config_template;  // relative to the configs/ directory
    std::string description;
};

const std::vector<CatalogEntry>& list_experiments();

struct Check {
    std::string name;
    bool pass = false;
    bool required = true;
    std::string detail;
};

struct MfCase {
    int subarrays = 1;
    ArrayCase acase = ArrayCase::pa;
    RangeProfile target;
    RangeProfile jamming;
    RangeProfile total;
    PeakList peaks;  // on the total profile
    FalseTargetPrediction prediction;
    double target_peak_db = 0.0;
};

struct BeamCurve {
    int subarrays = 1;
    int antennas = 1;
    double offset_hz = 0.0;
    std::vector<double> grid;
    std::vector<double> power_db;
    double notch_db = 0.0;  // normalized pattern at the jammer coordinate
    double notch = 0.0;     // |v^H R_u^-1 s_T| at the jammer coordinate
    double distortionless_error = 0.0;
};

struct SinrRow {
    double offset_hz = 0.0;
    int subarrays = 1;
    int antennas = 1;
    JammerMode mode = JammerMode::sf;
    CovarianceMode covariance = CovarianceMode::monte_carlo;
    MeasurementTriple direct;
    MeasurementTriple closed_form;
    double distortionless_error = 0.0;
};

MfCase run_mf_case(const BenchConfig& cfg, int subarrays);
std::vector<BeamCurve> run_beampatterns(const BenchConfig& cfg, SweepAxis axis);
std::vector<SinrRow> run_sinr_sweep(const BenchConfig& cfg);

std::vector<Check> mf_checks(const BenchConfig& cfg, const std::vector<MfCase>& cases);
std::vector<Check> beampattern_checks(const std::vector<BeamCurve>& curves);
std::vector<Check> sinr_checks(const BenchConfig& cfg, const std::vector<SinrRow>& rows);

// one inversion of at most `slack_db` tolerated, any other rise fails
bool non_increasing_within(const std::vector<double>& db, double slack_db, int allowed_inversions);

// steps where the two curves move in opposite directions (beyond `slack`)
int trend_disagreements(const std::vector<double>& a, const std::vector<double>& b, double slack);

std::string csv_header(const std::string& experiment, std::uint64_t seed);

struct ExperimentResult {
    std::string experiment;
    std::vector<std::string> files;
    std::vector<Check> checks;
    bool passed() const;
};

ExperimentResult run_experiment(const BenchConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace ecm
