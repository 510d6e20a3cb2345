// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/core.h>

#include "ecm/config.hpp"
#include "ecm/experiments.hpp"
#include "oracle.hpp"

using namespace ecm;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
    fmt::print("[{}] {:<34} {}  {}\n", id, name, pass ? "PASS" : "FAIL", detail);
    if (!pass)
        ++failures;
}

void info(const std::string& text) { fmt::print("      info: {}\n", text); }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string config_path(const std::string& name) { return std::string(ECM_CONFIG_DIR) + "/" + name; }

double nyquist_bin(const BenchConfig& cfg, const MfCase& m)
{
    return std::max(m.total.bin_spacing(), kSpeedOfLight / (4.0 * radar_for(cfg, m.subarrays).bandwidth_hz));
}

// every expected range has a detected peak within tol; returns the worst offset
bool peaks_at(const MfCase& m, const std::vector<double>& expected, double tol, double& worst)
{
    worst = 0;
    bool ok = true;
    for (double r : expected) {
        double best = 1e300;
        for (const Peak& p : m.peaks.peaks)
            best = std::min(best, std::abs(p.range_m - r));
        worst = std::max(worst, best);
        ok = ok && best <= tol;
    }
    return ok;
}

double peak_near(const RangeProfile& p, double r, double tol)
{
    double best = -400;
    for (std::size_t i = 0; i < p.range_m.size(); ++i)
        if (std::abs(p.range_m[i] - r) <= tol)
            best = std::max(best, p.power_db[i]);
    return best;
}

void peak_criterion(int id, const std::string& config, const std::vector<double>& expected)
{
    auto t0 = std::chrono::steady_clock::now();
    BenchConfig cfg = load_config(config_path(config), "mf-profile");
    bool ok = true;
    std::string detail;
    for (int s : {1, 2}) {
        MfCase m = run_mf_case(cfg, s);
        double worst = 0, tol = nyquist_bin(cfg, m);
        bool hit = peaks_at(m, expected, tol, worst);
        ok = ok && hit;
        detail += fmt::format("{}S={}: worst {:.2f} m (tol {:.2f} m)", detail.empty() ? "" : "; ", s, worst, tol);
    }
    double secs = seconds_since(t0);
    report(id, id == 1 ? "mf_peaks_q4_500khz" : "mf_peaks_q8_400khz", ok && secs < 10.0,
           fmt::format("{}; {:.2f} s", detail, secs));
}

void coherent_gain()
{
    BenchConfig cfg = load_config(config_path("mf_sf_q4.json"), "mf-profile");
    MfCase pa = run_mf_case(cfg, 1), f2 = run_mf_case(cfg, 2);
    double tol = nyquist_bin(cfg, pa);
    double diff = peak_near(pa.target, 6000, tol) - peak_near(f2.target, 6000, tol);
    report(3, "coherent_gain_ratio", std::abs(diff - 3.0103) <= 0.5,
           fmt::format("{:.3f} dB (expected 3.01 +- 0.5)", diff));
}

// jamming peak of antenna k alone, relative to the target peak
std::vector<double> isolated_margins(BenchConfig cfg)
{
    const Scenario& scn = cfg.scenario;
    RadarConfig radar = radar_for(cfg, 1);
    JammerSpec spec = resolve_jammer(cfg, ArrayCase::pa, radar);
    Pulse base = base_pulse(cfg, radar);
    double tol = kSpeedOfLight / (4.0 * radar.bandwidth_hz);
    auto profile = [&](RxOptions o) {
        RxOptions data = o;
        data.half_window_m += 1.0;
        RxData rx = synthesize_rx(ArrayCase::pa, radar, scn, &spec, base, data, 0);
        return matched_filter_profile(rx, base, 0, "pa", o.center_range_m, o.half_window_m);
    };
    RxOptions t;
    t.include_jammer = false;
    t.target_amplitude = std::sqrt(scn.target_power);
    double target = peak_near(profile(t), scn.target.range_m, tol);
    auto pred = predict_false_targets(spec, scn.jammer.range_m, radar, scn);
    std::vector<double> out;
    for (int k = 0; k < spec.antenna_count; ++k) {
        RxOptions j;
        j.include_target = false;
        j.active_antennas.assign(spec.antenna_count, false);
        j.active_antennas[k] = true;
        out.push_back(peak_near(profile(j), pred.ranges_m[k], tol) - target);
    }
    return out;
}

void power_threshold()
{
    auto setup = [](double scale, double df) {
        BenchConfig cfg = load_config(config_path("mf_sf_q4.json"), "mf-profile");
        cfg.jammer.offset_hz = df;
        cfg.jammer.threshold_scale = scale;
        cfg.jammer.jnr_db.reset();
        cfg.jammer.rho.clear();
        return cfg;
    };
    auto at = isolated_margins(setup(1.0, 50e3));
    auto half = isolated_margins(setup(0.5, 50e3));
    double min_at = *std::min_element(at.begin(), at.end());
    double min_half = *std::min_element(half.begin(), half.end());
    bool ok = min_at >= -0.2 && min_half < 0.0;
    report(4, "power_threshold", ok,
           fmt::format("at threshold min margin {:+.3f} dB; at 0.5x min margin {:+.3f} dB (Q=4, 50 kHz)", min_at,
                       min_half));
    auto wide = isolated_margins(setup(1.0, 500e3));
    std::string m;
    for (double v : wide)
        m += fmt::format(" {:+.2f}", v);
    info("margins at 500 kHz, threshold power, per antenna (dB):" + m);
}

void leakage_structure()
{
    Scenario scn;
    RadarConfig pa = default_radar(scn, 1);
    RadarConfig fda = default_radar(scn, 16);
    Pulse rect = rect_pulse(fda.pulse_width_s, fda.sample_rate_hz);
    JammerSpec j = make_jammer(4, 2.4e3, 1000, JammerMode::sf, scn.wavelength() / 2);
    cplx es = transmit_gain_toward(ArrayCase::fdamimo, fda, scn, scn.jammer_direction());
    CMatrix m = leakage_matrix_fdamimo(j, rect, es, fda, scn, Method::numeric);
    double diag = m.diagonal().cwiseAbs().minCoeff(), off = 0;
    for (int u = 0; u < m.rows(); ++u)
        for (int v = 0; v < m.cols(); ++v)
            if (u != v)
                off = std::max(off, std::abs(m(u, v)));

    cplx et = transmit_gain_toward(ArrayCase::pa, pa, scn, scn.jammer_direction());
    Pulse prect = rect_pulse(pa.pulse_width_s, pa.sample_rate_hz);
    bool decreasing = true;
    double prev = 1e300;
    for (int k = 0; k < 50; ++k) {
        JammerSpec jk = j;
        jk.offset_hz = k / (50.0 * 3 * pa.pulse_width_s);
        double v = std::abs(jamming_factor_pa(jk, prect, et, scn, Method::numeric));
        decreasing = decreasing && v < prev;
        prev = v;
    }
    cplx cf = jamming_factor_pa(j, prect, et, scn, Method::closed_form);
    auto ref = oracle::integrate_factor_bruteforce(j, pa.pulse_width_s, pa.sample_rate_hz, et, scn, 8);
    auto rep = oracle::compare("factor", ref.value, cf, 0.0, 1e-6);
    bool ok = off < 0.01 * diag && decreasing && rep.pass && ref.converged;
    report(5, "leakage_structure", ok,
           fmt::format("off/diag {:.2e}; |factor| strictly decreasing: {}; closed vs brute rel {:.2e}", off / diag,
                       decreasing ? "yes" : "no", rep.rel_err));
}

std::vector<double> notch_series(const std::string& config, const char* experiment, int subarrays, SweepAxis axis,
                                 LeakageModel lm)
{
    BenchConfig cfg = load_config(config_path(config), experiment);
    cfg.jammer.antennas = 4;
    cfg.sweep.antennas.clear();
    cfg.jammer.mode = JammerMode::sf;
    std::vector<double> out;
    RadarConfig radar = radar_for(cfg, subarrays);
    Pulse pulse = base_pulse(cfg, radar);
    ArrayCase ac = case_for(subarrays);
    for (int k = 0; k < 10; ++k) {
        cfg.jammer.offset_hz = k * 100e3 / 3 / 9;
        JammerSpec spec = resolve_jammer(cfg, ac, radar);
        auto m = measurements(ac, radar, cfg.scenario, spec, pulse, Method::numeric, lm);
        out.push_back(axis == SweepAxis::azimuth ? m.notch_azimuth : m.notch_range);
    }
    return out;
}

bool non_decreasing(const std::vector<double>& v, std::size_t& at)
{
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] < v[k - 1] - 1e-9) {
            at = k;
            return false;
        }
    return true;
}

void notch_trends()
{
    struct Case {
        const char* label;
        const char* config;
        const char* experiment;
        int s;
        SweepAxis axis;
    };
    const Case cases[] = {
        {"PA sidelobe azimuth", "azimuth_offset_pa.json", "beampattern-azimuth", 1, SweepAxis::azimuth},
        {"PA mainlobe range", "range_offset_fdamimo.json", "beampattern-range", 1, SweepAxis::range},
        {"S=4 sidelobe azimuth", "azimuth_offset_fdamimo.json", "beampattern-azimuth", 4, SweepAxis::azimuth},
        {"S=16 mainlobe range", "range_offset_fdamimo.json", "beampattern-range", 16, SweepAxis::range},
    };
    bool ok = true;
    std::string detail, diag;
    for (const Case& c : cases) {
        auto v = notch_series(c.config, c.experiment, c.s, c.axis, LeakageModel::full);
        std::size_t at = 0;
        bool mono = non_decreasing(v, at);
        ok = ok && mono;
        detail += fmt::format("{}{} {}", detail.empty() ? "" : "; ", c.label,
                              mono ? "rising" : fmt::format("falls at point {}", at));
        if (c.s > 1) {
            auto d = notch_series(c.config, c.experiment, c.s, c.axis, LeakageModel::diagonal);
            std::size_t a2 = 0;
            diag += fmt::format("{}{} {}", diag.empty() ? "" : "; ", c.label,
                                non_decreasing(d, a2) ? "rising" : "not monotone");
        }
    }
    report(6, "notch_rise", ok, detail);
    info("diagonal leakage model: " + diag);
}

struct Curves {
    std::vector<int> s;
    std::vector<std::vector<double>> db;
};

Curves sinr_curves(const std::vector<SinrRow>& rows)
{
    Curves c;
    for (const SinrRow& r : rows) {
        if (c.s.empty() || c.s.back() != r.subarrays) {
            c.s.push_back(r.subarrays);
            c.db.emplace_back();
        }
        c.db.back().push_back(10 * std::log10(r.direct.sinr));
    }
    return c;
}

void sinr_trends()
{
    auto t0 = std::chrono::steady_clock::now();
    BenchConfig side = load_config(config_path("sinr_sidelobe.json"), "sinr-sweep");
    BenchConfig main = load_config(config_path("sinr_mainlobe.json"), "sinr-sweep");
    Curves a = sinr_curves(run_sinr_sweep(side));
    Curves b = sinr_curves(run_sinr_sweep(main));
    double secs = seconds_since(t0);

    auto at_zero = [](const Curves& c, int s) {
        for (std::size_t i = 0; i < c.s.size(); ++i)
            if (c.s[i] == s)
                return c.db[i].front();
        return std::nan("");
    };
    double s1 = at_zero(a, 1), s8 = at_zero(a, 8), s16 = at_zero(a, 16);
    bool ordering = s1 > s8 && s8 > s16;
    bool mono = true;
    std::string bad;
    for (const Curves* c : {&a, &b})
        for (std::size_t i = 0; i < c->s.size(); ++i)
            if (!non_increasing_within(c->db[i], 0.2, 1)) {
                mono = false;
                bad += fmt::format(" {}S={}", c == &a ? "sidelobe " : "mainlobe ", c->s[i]);
            }
    double m1 = at_zero(b, 1), m16 = at_zero(b, 16);
    bool mainlobe = m16 > m1;
    report(7, "sinr_trends", ordering && mono && mainlobe && secs < 120.0,
           fmt::format("(a) {:.2f} > {:.2f} > {:.2f} dB {}; (b) {}; (c) {:.2f} vs {:.2f} dB {}; {:.1f} s", s1, s8,
                       s16, ordering ? "ok" : "no", mono ? "all non-increasing" : "rises in" + bad, m16, m1,
                       mainlobe ? "ok" : "no", secs));

    BenchConfig dside = side, dmain = main;
    dside.sweep.leakage = dmain.sweep.leakage = LeakageModel::diagonal;
    bool dmono = true;
    for (const BenchConfig* c : {&dside, &dmain}) {
        Curves d = sinr_curves(run_sinr_sweep(*c));
        for (const auto& v : d.db)
            dmono = dmono && non_increasing_within(v, 0.2, 1);
    }
    info(fmt::format("diagonal leakage model: every SINR curve non-increasing: {}", dmono ? "yes" : "no"));
}

bool hermitian_psd(const CMatrix& m)
{
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
        return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    auto ev = es.eigenvalues();
    return ev(0) >= -1e-10 * std::abs(ev(ev.size() - 1));
}

int trend_disagreements_for(LeakageModel lm, std::string& where, double& lemma_err, double& dist_err, bool& psd);

void oracle_equivalences()
{
    double lemma_err = 0, dist_err = 0;
    bool psd = true;
    std::string where, dwhere;
    int disagreements = trend_disagreements_for(LeakageModel::full, where, lemma_err, dist_err, psd);
    double l2 = 0, d2 = 0;
    bool p2 = true;
    int diag = trend_disagreements_for(LeakageModel::diagonal, dwhere, l2, d2, p2);
    const int steps = 72;
    bool ok = lemma_err < 1e-10 && dist_err <= 1e-9 && psd && disagreements == 0;
    report(8, "oracle_equivalences", ok,
           fmt::format("lemma vs dense {:.1e}; |w^H x - 1| {:.1e}; Hermitian PSD {}; trend disagreements {}/{}{}",
                       lemma_err, dist_err, psd ? "yes" : "no", disagreements, steps, where));
    info(fmt::format("diagonal leakage model: trend disagreements {}/{}{}", diag, steps, dwhere));
}

int trend_disagreements_for(LeakageModel lm, std::string& where, double& lemma_err, double& dist_err, bool& psd)
{
    int disagreements = 0;
    struct Case {
        int s;
        bool mainlobe;
    };
    for (Case c : {Case{1, false}, Case{4, false}, Case{16, true}, Case{1, true}}) {
        Scenario scn;
        if (c.mainlobe)
            scn.jammer.range_m = 6010;
        else
            scn.jammer.azimuth_rad = deg2rad(15);
        RadarConfig cfg = default_radar(scn, c.s);
        ArrayCase ac = case_for(c.s);
        Pulse pulse = lfm_pulse(cfg.pulse_width_s, cfg.bandwidth_hz, cfg.sample_rate_hz);
        Pulse rect = rect_pulse(cfg.pulse_width_s, cfg.sample_rate_hz);
        std::vector<double> d_notch, c_notch, d_sinr, c_sinr;
        for (int k = 0; k < 10; ++k) {
            double df = k * 100e3 / 3 / 9;
            JammerSpec spec = make_jammer(4, df, 1000, JammerMode::sf, scn.wavelength() / 2);
            CovarianceSet cov =
                build_covariances(ac, cfg, scn, spec, pulse, CovarianceMode::analytic_rank1, 0, 0, 1, lm);
            psd = psd && hermitian_psd(cov.jamming) && hermitian_psd(cov.echo) && hermitian_psd(cov.disturbance) &&
                  hermitian_psd(cov.total);
            if (k % 3 == 0) {
                CMatrix dense = oracle::dense_inverse(cov.disturbance);
                lemma_err = std::max(lemma_err, (lemma_inverse(rank_one_form(cov)) - dense).cwiseAbs().maxCoeff());
            }
            CVector x = target_snapshot(ac, std::sqrt(scn.target_power), cfg, scn);
            MvdrWeights w =
                mvdr_weights(cov.disturbance, x, std::sqrt(scn.target_power), coherent_count(ac, cfg), ac);
            dist_err = std::max(dist_err, std::abs(w.w.dot(x) - 1.0));
            auto d = measurements_from(cov, ac, cfg, scn, scn.target_power);
            auto f = measurements(ac, cfg, scn, spec, rect, Method::closed_form);
            d_notch.push_back(c.mainlobe ? d.notch_range : d.notch_azimuth);
            c_notch.push_back(c.mainlobe ? f.notch_range : f.notch_azimuth);
            d_sinr.push_back(d.sinr);
            c_sinr.push_back(f.sinr);
        }
        int bad = trend_disagreements(d_notch, c_notch, 1e-9) + trend_disagreements(d_sinr, c_sinr, 1e-9);
        disagreements += bad;
        if (bad)
            where += fmt::format(" S={}{}:{}", c.s, c.mainlobe ? "/mainlobe" : "/sidelobe", bad);
    }
    return disagreements;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism()
{
    fs::path root = fs::temp_directory_path() / "ecm_acceptance";
    fs::remove_all(root);
    bool ok = true;
    std::size_t files = 0;
    for (const char* name : {"sinr_sidelobe.json", "mf_sf_q4.json", "azimuth_offset_fdamimo.json"}) {
        BenchConfig cfg = load_config(config_path(name));
        cfg.run.seed = 7;
        cfg.run.trials = std::min(cfg.run.trials, 40);
        std::vector<std::string> outs;
        for (int threads : {1, 4}) {
            cfg.run.threads = threads;
            fs::path dir = root / fmt::format("{}_{}", cfg.experiment, threads);
            auto res = run_experiment(cfg, dir);
            std::string all;
            for (const auto& f : res.files)
                all += slurp(dir / f);
            files += res.files.size();
            outs.push_back(all);
        }
        ok = ok && !outs[0].empty() && outs[0] == outs[1];
    }
    report(9, "determinism", ok, fmt::format("{} CSV files compared across 1 and 4 threads", files / 2));
}

}  // namespace

int main()
{
    try {
        peak_criterion(1, "mf_sf_q4.json", {5925, 6000, 6075, 6150});
        peak_criterion(2, "mf_sf_q8.json", {5880, 5940, 6000, 6060, 6120, 6180, 6240, 6300});
        coherent_gain();
        power_threshold();
        leakage_structure();
        notch_trends();
        sinr_trends();
        oracle_equivalences();
        determinism();
    } catch (const std::exception& e) {
        fmt::print("error: {}\n", e.what());
        return 2;
    }
    fmt::print("{} criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
