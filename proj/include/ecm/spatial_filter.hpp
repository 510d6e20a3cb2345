#pragma once

#include <cstdint>
#include <vector>

#include "ecm/array_models.hpp"
#include "ecm/fda_jammer.hpp"
#include "ecm/waveforms.hpp"

namespace ecm {

enum class CovarianceMode { analytic_rank1, monte_carlo };
// diagonal keeps only the per-channel leakage and drops cross-channel terms
enum class LeakageModel { full, diagonal };

struct CovarianceSet {
    CMatrix jamming;      // R_j
    CMatrix echo;         // R_v
    CMatrix noise;        // R_n
    CMatrix disturbance;  // R_u = R_j + R_n
    CMatrix total;        // R_w = R_j + R_v + R_n
    CovarianceMode mode = CovarianceMode::analytic_rank1;
    int trials = 0;
};

// Jamming snapshot rescaled so the jamming factor has unit peak (|E_t| sum rho_q) and the
// total jamming power sum rho_q^2 is carried as an amplitude.
CVector jamming_direction(ArrayCase c, const LeakageFactor& leak, const JammerSpec& spec,
                          const RadarConfig& cfg, const Scenario& scn);

CovarianceSet build_covariances(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                                const JammerSpec& spec, const Pulse& pulse, CovarianceMode mode,
                                int trials = 0, std::uint64_t seed = 0, int threads = 1,
                                LeakageModel leakage = LeakageModel::full);

struct MvdrWeights {
    CVector w;
    ArrayCase acase = ArrayCase::pa;
};

MvdrWeights mvdr_weights(const CMatrix& disturbance, const CVector& target, cplx xi_t,
                         int coherent_count, ArrayCase c);

struct RankOneForm {
    double noise_power;
    double gamma;
    CVector j;
};

CMatrix lemma_inverse(const RankOneForm& form);
RankOneForm rank_one_form(const CovarianceSet& cov);

enum class ScenarioShape { sidelobe, mainlobe, mixed };

ScenarioShape classify(const Scenario& scn);

struct MeasurementTriple {
    double notch_azimuth = 0.0;
    double notch_range = 0.0;
    double sinr = 0.0;        // coherent target power over jammer-direction leakage
    double sinr_exact = 0.0;  // |w^H x|^2 / w^H (R_v + R_n) w, direct only
    Method method = Method::numeric;
    ScenarioShape shape = ScenarioShape::sidelobe;
};

// Method::numeric is the direct evaluation from built matrices; Method::closed_form uses the
// lemma-based scalar expressions.
MeasurementTriple measurements(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                               const JammerSpec& spec, const Pulse& pulse, Method method,
                               LeakageModel leakage = LeakageModel::full);

// direct evaluation against a supplied covariance set (Monte Carlo sweeps)
MeasurementTriple measurements_from(const CovarianceSet& cov, ArrayCase c, const RadarConfig& cfg,
                                    const Scenario& scn, double mean_target_power);

enum class SweepAxis { azimuth, range };

// |w^H v|^2 in dB over azimuth (deg, range fixed at the target) or range (m, azimuth fixed)
std::vector<double> beampattern(const MvdrWeights& weights, ArrayCase c, const RadarConfig& cfg,
                                const Scenario& scn, SweepAxis axis,
                                const std::vector<double>& grid);

}  // namespace ecm
