#include "ecm/spatial_filter.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "ecm/error.hpp"
#include "ecm/parallel.hpp"
#include "ecm/random.hpp"

namespace ecm {

namespace {

cplx gain_of(ArrayCase c, const LeakageFactor& leak)
{
    return c == ArrayCase::pa ? leak.pa_gain : leak.subarray_gain;
}

cplx unit_phase(cplx z)
{
    double a = std::abs(z);
    if (a < 1e-300)
        throw Error(Errc::transmit_null, "jammer sits in a transmit null");
    return z / a;
}

Eigen::LLT<CMatrix> factor(const CMatrix& r)
{
    Eigen::LLT<CMatrix> llt(r);
    if (llt.info() != Eigen::Success)
        throw Error(Errc::singular, "disturbance covariance is not positive definite");
    return llt;
}

struct Views {
    CVector target, azimuth, range, jammer;
};

Views views(ArrayCase c, const RadarConfig& cfg, const Scenario& scn)
{
    const double rt = scn.target.range_m;
    const double rj = scn.jammer.range_m;
    Views v;
    v.target = virtual_steering(c, cfg, scn, scn.target_direction(), rt);
    v.azimuth = virtual_steering(c, cfg, scn, scn.direction(scn.jammer.azimuth_rad, rt), rt);
    v.range = virtual_steering(c, cfg, scn, scn.direction(scn.target.azimuth_rad, rj), rj);
    v.jammer = virtual_steering(c, cfg, scn, scn.jammer_direction(), rj);
    return v;
}

}  // namespace

CVector jamming_direction(ArrayCase c, const LeakageFactor& leak, const JammerSpec& spec,
                          const RadarConfig& cfg, const Scenario& scn)
{
    CVector snap = jamming_snapshot(c, leak, cfg, scn);
    double asum = spec.amplitude_sum();
    if (asum <= 0.0)
        return CVector::Zero(snap.size());
    double g = std::abs(gain_of(c, leak));
    if (g < 1e-300)
        throw Error(Errc::transmit_null, "jammer sits in a transmit null");
    return snap * (std::sqrt(spec.power_sum()) / (g * asum));
}

CovarianceSet build_covariances(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                                const JammerSpec& spec, const Pulse& pulse, CovarianceMode mode,
                                int trials, std::uint64_t seed, int threads, LeakageModel leakage)
{
    const Eigen::Index n = snapshot_size(c, cfg);
    const Direction jd = scn.jammer_direction();
    const CVector sj = virtual_steering(c, cfg, scn, jd, scn.jammer.range_m);
    const cplx gain = transmit_gain_toward(c, cfg, scn, jd);

    CovarianceSet cov;
    cov.mode = mode;
    cov.noise = scn.noise_power * CMatrix::Identity(n, n);

    if (mode == CovarianceMode::analytic_rank1) {
        LeakageFactor leak = leakage_factor(spec, pulse, cfg, scn, Method::numeric);
        if (leakage == LeakageModel::diagonal && leak.fdamimo_matrix.size() > 0)
            leak.fdamimo_matrix = CMatrix(leak.fdamimo_matrix.diagonal().asDiagonal());
        CVector j = jamming_direction(c, leak, spec, cfg, scn);
        cov.jamming = j * j.adjoint();
        cov.echo = (scn.echo_power * std::norm(gain)) * (sj * sj.adjoint());
    } else {
        if (trials < 10)
            throw Error(Errc::too_few_trials, "Monte Carlo covariance needs at least 10 trials");
        cov.trials = trials;
        const int Q = spec.antenna_count;
        const int S = c == ArrayCase::pa ? 1 : cfg.subarrays;
        const cplx ph = unit_phase(gain);
        const CVector g = antenna_phases(spec, scn);
        const CVector ar = receive_steering(cfg, scn, jd);
        const CVector cj = c == ArrayCase::pa ? CVector::Ones(1)
                                              : composite_steering(cfg, scn, jd, scn.jammer.range_m);
        // per-antenna leakage, unit amplitude: (U_q c_J) for every jammer antenna q
        std::vector<std::vector<cplx>> diag(2 * S - 1);
        for (int k = -(S - 1); k <= S - 1; ++k)
            diag[k + S - 1] = antenna_integrals(spec, pulse, k * cfg.subarray_offset_hz);
        std::vector<CVector> mixed(Q, CVector::Zero(S));
        for (int q = 0; q < Q; ++q)
            for (int u = 0; u < S; ++u)
                for (int v = 0; v < S; ++v)
                    if (leakage == LeakageModel::full || u == v)
                        mixed[q](u) += ph * g(q) * diag[v - u + S - 1][q] * cj(v);

        CMatrix jcols(n, trials), vcols(n, trials);
        parallel_for(std::size_t(trials), threads, [&](std::size_t t) {
            Rng rng = stream_for(seed, t);
            CVector tx = CVector::Zero(S);
            for (int q = 0; q < Q; ++q)
                tx += spec.amplitudes[q] * std::polar(1.0, uniform_phase(rng)) * mixed[q];
            cplx xi_v = complex_gaussian(rng, scn.echo_power);
            jcols.col(Eigen::Index(t)) = Eigen::kroneckerProduct(tx, ar).eval();
            vcols.col(Eigen::Index(t)) = xi_v * gain * sj;
        });
        cov.jamming = jcols * jcols.adjoint() / double(trials);
        cov.echo = vcols * vcols.adjoint() / double(trials);
    }
    // exact Hermitian symmetry
    cov.jamming = (0.5 * (cov.jamming + cov.jamming.adjoint())).eval();
    cov.echo = (0.5 * (cov.echo + cov.echo.adjoint())).eval();
    cov.disturbance = cov.jamming + cov.noise;
    cov.total = cov.jamming + cov.echo + cov.noise;
    return cov;
}

MvdrWeights mvdr_weights(const CMatrix& disturbance, const CVector& target, cplx xi_t,
                         int coherent_count, ArrayCase c)
{
    if (disturbance.rows() != target.size())
        throw Error(Errc::length_mismatch, "covariance and target snapshot differ in size");
    CVector w = factor(disturbance).solve(target) / (xi_t * std::sqrt(double(coherent_count)));
    cplx response = w.dot(target);
    if (std::abs(response) < 1e-300)
        throw Error(Errc::singular, "target response vanished");
    w /= std::conj(response);
    return {w, c};
}

CMatrix lemma_inverse(const RankOneForm& form)
{
    const Eigen::Index n = form.j.size();
    const double s2 = form.noise_power;
    double coef = form.gamma / (s2 * (s2 + form.gamma * form.j.squaredNorm()));
    CMatrix out = CMatrix::Identity(n, n) / s2;
    out -= coef * (form.j * form.j.adjoint());
    return out;
}

RankOneForm rank_one_form(const CovarianceSet& cov)
{
    const Eigen::Index n = cov.jamming.rows();
    RankOneForm form{cov.noise(0, 0).real(), 0.0, CVector::Zero(n)};
    Eigen::SelfAdjointEigenSolver<CMatrix> es(cov.jamming);
    double top = es.eigenvalues()(n - 1);
    if (top <= 0.0)
        return form;
    if (n > 1 && es.eigenvalues()(n - 2) > 1e-9 * top)
        throw Error(Errc::not_rank_one, "jamming covariance has more than one significant eigenvalue");
    form.gamma = 1.0;
    form.j = std::sqrt(top) * es.eigenvectors().col(n - 1);
    return form;
}

ScenarioShape classify(const Scenario& scn)
{
    bool same_range = std::abs(scn.jammer.range_m - scn.target.range_m) < 1e-9;
    bool same_azimuth = std::abs(scn.jammer.azimuth_rad - scn.target.azimuth_rad) < 1e-12;
    if (same_range && !same_azimuth)
        return ScenarioShape::sidelobe;
    if (same_azimuth && !same_range)
        return ScenarioShape::mainlobe;
    return ScenarioShape::mixed;
}

MeasurementTriple measurements_from(const CovarianceSet& cov, ArrayCase c, const RadarConfig& cfg,
                                    const Scenario& scn, double mean_target_power)
{
    Views v = views(c, cfg, scn);
    auto llt = factor(cov.disturbance);
    CVector r = llt.solve(v.target);
    const int g = coherent_count(c, cfg);

    MeasurementTriple m;
    m.method = Method::numeric;
    m.shape = classify(scn);
    m.notch_azimuth = std::abs(v.azimuth.dot(r));
    m.notch_range = std::abs(v.range.dot(r));
    m.sinr = g * mean_target_power / std::norm(v.jammer.dot(r));

    double amp = std::sqrt(scn.target_power);
    CVector x = amp * std::sqrt(double(g)) * v.target;
    MvdrWeights w = mvdr_weights(cov.disturbance, x, cplx(amp, 0.0), g, c);
    double leak = (w.w.adjoint() * (cov.echo + cov.noise) * w.w)(0, 0).real();
    m.sinr_exact = 1.0 / leak;
    return m;
}

MeasurementTriple measurements(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                               const JammerSpec& spec, const Pulse& pulse, Method method,
                               LeakageModel leakage)
{
    if (method == Method::numeric) {
        CovarianceSet cov = build_covariances(c, cfg, scn, spec, pulse, CovarianceMode::analytic_rank1,
                                              0, 0, 1, leakage);
        return measurements_from(cov, c, cfg, scn, scn.target_power);
    }

    const Direction td = scn.target_direction();
    const Direction jd = scn.jammer_direction();
    const double rt = scn.target.range_m;
    const double rj = scn.jammer.range_m;
    const double s2 = scn.noise_power;
    const double p = spec.power_sum();
    const cplx gain = transmit_gain_toward(c, cfg, scn, jd);
    const double asum = spec.amplitude_sum();
    cplx unit = asum > 0.0 ? jamming_factor_pa(spec, pulse, gain, scn, Method::closed_form) /
                                 (std::abs(gain) * asum)
                           : cplx(0.0);
    const int N = cfg.rx_count;
    const CVector art = receive_steering(cfg, scn, td);
    const Direction az_dir = scn.direction(scn.jammer.azimuth_rad, rt);
    const Direction rg_dir = scn.direction(scn.target.azimuth_rad, rj);

    MeasurementTriple m;
    m.method = Method::closed_form;
    m.shape = classify(scn);
    m.sinr_exact = std::numeric_limits<double>::quiet_NaN();

    if (c == ArrayCase::pa) {
        const CVector arj = receive_steering(cfg, scn, jd);
        // cross terms collapse to N * X when the probe sits on the jammer
        auto y = [&](const Direction& d) {
            CVector a = receive_steering(cfg, scn, d);
            cplx x = a.dot(art);
            cplx cross = a.dot(arj) * arj.dot(art);
            return x / s2 - std::norm(unit) * cross * p / (s2 * (s2 + N * p));
        };
        m.notch_azimuth = std::abs(y(az_dir));
        m.notch_range = std::abs(y(rg_dir));
        m.sinr = cfg.tx_count * scn.target_power / std::norm(y(jd));
        return m;
    }

    const int S = cfg.subarrays;
    const CVector ct = composite_steering(cfg, scn, td, rt);
    const CMatrix ups = unit * CMatrix::Identity(S, S);
    const CVector cj = composite_steering(cfg, scn, jd, rj);
    const CVector arj = receive_steering(cfg, scn, jd);
    auto y = [&](const Direction& d, double range) {
        CVector cv = composite_steering(cfg, scn, d, range);
        CVector a = receive_steering(cfg, scn, d);
        cplx xt = cv.dot(ct);
        cplx xr = a.dot(art);
        cplx psi = cv.dot(ups * cj) * cj.dot(ups.adjoint() * ct) * a.dot(arj) * arj.dot(art);
        return xt * xr / s2 - psi * p / (s2 * (s2 + double(S) * N * p));
    };
    m.notch_azimuth = std::abs(y(az_dir, rt));
    m.notch_range = std::abs(y(rg_dir, rj));
    m.sinr = cfg.subarray_size() * scn.target_power / std::norm(y(jd, rj));
    return m;
}

std::vector<double> beampattern(const MvdrWeights& weights, ArrayCase c, const RadarConfig& cfg,
                                const Scenario& scn, SweepAxis axis,
                                const std::vector<double>& grid)
{
    std::vector<double> out;
    out.reserve(grid.size());
    for (double value : grid) {
        CVector v;
        if (axis == SweepAxis::azimuth) {
            double rt = scn.target.range_m;
            v = virtual_steering(c, cfg, scn, scn.direction(deg2rad(value), rt), rt);
        } else {
            v = virtual_steering(c, cfg, scn, scn.direction(scn.target.azimuth_rad, value), value);
        }
        double pw = std::norm(weights.w.dot(v));
        out.push_back(pw > 1e-30 ? 10.0 * std::log10(pw) : -300.0);
    }
    return out;
}

}  // namespace ecm
