#include "ecm/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ecm/error.hpp"

namespace ecm {

using nlohmann::json;

namespace {

void fail(const std::string& msg) { throw Error(Errc::config, msg); }

void only_keys(const json& j, const std::string& where, std::set<std::string> allowed)
{
    if (!j.is_object())
        fail(where + " must be an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            fail("unknown key '" + item.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out)
{
    if (!j.contains(key) || j.at(key).is_null())
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out)
{
    if (!j.contains(key) || j.at(key).is_null())
        return;
    T v{};
    read(j, key, v);
    out = v;
}

Grid read_grid(const json& j, const std::string& where, Grid g)
{
    only_keys(j, where, {"start", "stop", "points"});
    read(j, "start", g.start);
    read(j, "stop", g.stop);
    read(j, "points", g.points);
    return g;
}

json grid_json(const Grid& g) { return {{"start", g.start}, {"stop", g.stop}, {"points", g.points}}; }

template <class T>
json opt_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

JammerMode parse_mode(std::string s)
{
    for (char& ch : s)
        ch = char(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "sf")
        return JammerMode::sf;
    if (s == "af")
        return JammerMode::af;
    fail("jammer mode must be 'sf' or 'af', got '" + s + "'");
    return JammerMode::sf;
}

CovarianceMode parse_covariance(const std::string& s)
{
    if (s == "monte_carlo")
        return CovarianceMode::monte_carlo;
    if (s == "analytic")
        return CovarianceMode::analytic_rank1;
    fail("covariance must be 'monte_carlo' or 'analytic', got '" + s + "'");
    return CovarianceMode::monte_carlo;
}

const char* covariance_name(CovarianceMode m)
{
    return m == CovarianceMode::monte_carlo ? "monte_carlo" : "analytic";
}

const char* leakage_name(LeakageModel m) { return m == LeakageModel::full ? "full" : "diagonal"; }

double spatial_sweep_stop(int q) { return q > 1 ? 100e3 / (q - 1) : 100e3; }

}  // namespace

std::vector<double> Grid::values() const
{
    if (points < 1)
        throw Error(Errc::config, "grid needs at least one point");
    if (points == 1)
        return {start};
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
        out[i] = start + (stop - start) * double(i) / double(points - 1);
    out.back() = stop;
    return out;
}

BenchConfig default_config(const std::string& experiment)
{
    BenchConfig cfg;
    cfg.experiment = experiment;
    cfg.radar = default_radar(cfg.scenario, 1);
    cfg.jammer.spacing_m = cfg.scenario.wavelength() / 2.0;
    cfg.jammer.jnr_db = 30.0;
    cfg.scenario.target_power = db_to_linear(cfg.snr_db) * cfg.scenario.noise_power;
    cfg.scenario.echo_power = db_to_linear(cfg.inr_db) * cfg.scenario.noise_power;

    if (experiment == "mf-profile") {
        cfg.jammer.antennas = 4;
        cfg.jammer.offset_hz = 500e3;
        cfg.scenario.jammer.range_m = 6150.0;
        cfg.sweep.subarrays = {1, 2};
        cfg.sweep.offsets = {500e3, 500e3, 1};
    } else if (experiment == "beampattern-azimuth") {
        cfg.jammer.antennas = 4;
        cfg.scenario.jammer.azimuth_rad = deg2rad(15.0);
        cfg.sweep.subarrays = {1};
        cfg.sweep.offsets = {0.0, spatial_sweep_stop(4), 4};
        cfg.sweep.grid = {-90.0, 90.0, 1801};
        cfg.sweep.covariance = CovarianceMode::analytic_rank1;
    } else if (experiment == "beampattern-range") {
        cfg.jammer.antennas = 4;
        cfg.scenario.jammer.range_m = 6010.0;
        cfg.sweep.subarrays = {16};
        cfg.sweep.offsets = {0.0, spatial_sweep_stop(4), 4};
        cfg.sweep.grid = {5950.0, 6050.0, 201};
        cfg.sweep.covariance = CovarianceMode::analytic_rank1;
    } else if (experiment == "sinr-sweep") {
        cfg.jammer.antennas = 4;
        cfg.scenario.jammer.azimuth_rad = deg2rad(15.0);
        cfg.sweep.subarrays = {1, 8, 16};
        cfg.sweep.offsets = {0.0, spatial_sweep_stop(4), 10};
        cfg.sweep.covariance = CovarianceMode::monte_carlo;
    } else {
        fail("unknown experiment '" + experiment + "'");
    }
    return cfg;
}

BenchConfig parse_config(const std::string& text, const std::string& experiment)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(root, "config",
              {"experiment", "scenario", "radar", "jammer", "matched_filter", "sweep", "run"});
    std::string name = experiment.empty() ? "sinr-sweep" : experiment;
    read(root, "experiment", name);
    if (!experiment.empty() && name != experiment)
        fail("config is for '" + name + "', not '" + experiment + "'");
    BenchConfig cfg = default_config(name);
    const json empty = json::object();
    auto section = [&](const char* key) -> const json& {
        return root.contains(key) ? root.at(key) : empty;
    };

    Scenario& scn = cfg.scenario;
    const json& js = section("scenario");
    only_keys(js, "scenario",
              {"carrier_hz", "platform_height_m", "platform_velocity_mps", "noise_power", "snr_db",
               "inr_db", "target", "jammer"});
    read(js, "carrier_hz", scn.carrier_hz);
    read(js, "platform_height_m", scn.platform_height_m);
    read(js, "platform_velocity_mps", scn.platform_velocity_mps);
    read(js, "noise_power", scn.noise_power);
    read(js, "snr_db", cfg.snr_db);
    read(js, "inr_db", cfg.inr_db);
    if (js.contains("target")) {
        const json& t = js.at("target");
        only_keys(t, "scenario.target", {"range_m", "azimuth_deg", "velocity_mps"});
        read(t, "range_m", scn.target.range_m);
        double az = rad2deg(scn.target.azimuth_rad);
        read(t, "azimuth_deg", az);
        scn.target.azimuth_rad = deg2rad(az);
        read(t, "velocity_mps", scn.target.velocity_mps);
    }
    if (js.contains("jammer")) {
        const json& t = js.at("jammer");
        only_keys(t, "scenario.jammer", {"range_m", "azimuth_deg"});
        read(t, "range_m", scn.jammer.range_m);
        double az = rad2deg(scn.jammer.azimuth_rad);
        read(t, "azimuth_deg", az);
        scn.jammer.azimuth_rad = deg2rad(az);
    }
    scn.target_power = db_to_linear(cfg.snr_db) * scn.noise_power;
    scn.echo_power = db_to_linear(cfg.inr_db) * scn.noise_power;

    RadarConfig& r = cfg.radar;
    r.spacing_m = scn.wavelength() / 2.0;
    const json& jr = section("radar");
    only_keys(jr, "radar",
              {"tx_count", "rx_count", "spacing_m", "pulse_width_s", "bandwidth_hz",
               "subarray_offset_hz", "sample_rate_hz", "waveform", "strict_paper_mode"});
    read(jr, "tx_count", r.tx_count);
    read(jr, "rx_count", r.rx_count);
    read(jr, "spacing_m", r.spacing_m);
    read(jr, "pulse_width_s", r.pulse_width_s);
    read(jr, "bandwidth_hz", r.bandwidth_hz);
    read(jr, "subarray_offset_hz", r.subarray_offset_hz);
    std::optional<double> fs;
    read_opt(jr, "sample_rate_hz", fs);
    r.explicit_sample_rate = fs.has_value();
    r.subarrays = 1;
    r.sample_rate_hz = fs.value_or(default_sample_rate(r.bandwidth_hz, 1, r.subarray_offset_hz));
    read(jr, "waveform", cfg.waveform);
    read(jr, "strict_paper_mode", cfg.strict_paper_mode);

    JammerPlan& jp = cfg.jammer;
    jp.spacing_m = scn.wavelength() / 2.0;
    const json& jj = section("jammer");
    only_keys(jj, "jammer",
              {"mode", "antennas", "delta_f_prime_hz", "spacing_m", "jnr_db", "rho",
               "threshold_scale"});
    std::string mode = jp.mode == JammerMode::sf ? "sf" : "af";
    read(jj, "mode", mode);
    jp.mode = parse_mode(mode);
    read(jj, "antennas", jp.antennas);
    read(jj, "delta_f_prime_hz", jp.offset_hz);
    read_opt(jj, "spacing_m", jp.spacing_m);
    int sources = 0;
    if (jj.contains("rho") && !jj.at("rho").is_null()) {
        read(jj, "rho", jp.rho);
        ++sources;
    }
    if (jj.contains("threshold_scale") && !jj.at("threshold_scale").is_null()) {
        read_opt(jj, "threshold_scale", jp.threshold_scale);
        ++sources;
    }
    if (jj.contains("jnr_db") && !jj.at("jnr_db").is_null()) {
        read_opt(jj, "jnr_db", jp.jnr_db);
        ++sources;
    } else if (sources > 0) {
        jp.jnr_db.reset();
    }
    if (sources > 1)
        fail("jammer: give only one of jnr_db, rho, threshold_scale");

    const json& jm = section("matched_filter");
    only_keys(jm, "matched_filter",
              {"center_range_m", "half_window_m", "noise", "threshold_db", "element", "channel",
               "downconversion_range_m"});
    read(jm, "center_range_m", cfg.mf.center_range_m);
    read(jm, "half_window_m", cfg.mf.half_window_m);
    read(jm, "noise", cfg.mf.noise);
    read(jm, "threshold_db", cfg.mf.threshold_db);
    read(jm, "element", cfg.mf.element);
    read(jm, "channel", cfg.mf.channel);
    read_opt(jm, "downconversion_range_m", cfg.mf.downconversion_range_m);

    const json& jw = section("sweep");
    only_keys(jw, "sweep",
              {"subarrays", "antennas", "delta_f_prime_hz", "grid", "covariance", "leakage"});
    read(jw, "subarrays", cfg.sweep.subarrays);
    read(jw, "antennas", cfg.sweep.antennas);
    // explicit grid, else a lone jammer offset, else the default span for this Q
    if (jw.contains("delta_f_prime_hz"))
        cfg.sweep.offsets = read_grid(jw.at("delta_f_prime_hz"), "sweep.delta_f_prime_hz", cfg.sweep.offsets);
    else if (jj.contains("delta_f_prime_hz") || cfg.experiment == "mf-profile")
        cfg.sweep.offsets = {jp.offset_hz, jp.offset_hz, 1};
    else
        cfg.sweep.offsets.stop = spatial_sweep_stop(jp.antennas);
    if (jw.contains("grid"))
        cfg.sweep.grid = read_grid(jw.at("grid"), "sweep.grid", cfg.sweep.grid);
    std::string cov = covariance_name(cfg.sweep.covariance);
    read(jw, "covariance", cov);
    cfg.sweep.covariance = parse_covariance(cov);
    std::string leak = leakage_name(cfg.sweep.leakage);
    read(jw, "leakage", leak);
    if (leak == "full")
        cfg.sweep.leakage = LeakageModel::full;
    else if (leak == "diagonal")
        cfg.sweep.leakage = LeakageModel::diagonal;
    else
        fail("sweep.leakage must be 'full' or 'diagonal', got '" + leak + "'");

    const json& jn = section("run");
    only_keys(jn, "run", {"seed", "trials", "threads"});
    read(jn, "seed", cfg.run.seed);
    read(jn, "trials", cfg.run.trials);
    read(jn, "threads", cfg.run.threads);

    validate(cfg);
    return cfg;
}

BenchConfig load_config(const std::string& path, const std::string& experiment)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), experiment);
}

std::string canonical_config(const BenchConfig& cfg)
{
    const Scenario& s = cfg.scenario;
    const RadarConfig& r = cfg.radar;
    const JammerPlan& jp = cfg.jammer;
    json root;
    root["experiment"] = cfg.experiment;
    root["scenario"] = {
        {"carrier_hz", s.carrier_hz},
        {"platform_height_m", s.platform_height_m},
        {"platform_velocity_mps", s.platform_velocity_mps},
        {"noise_power", s.noise_power},
        {"snr_db", cfg.snr_db},
        {"inr_db", cfg.inr_db},
        {"target",
         {{"range_m", s.target.range_m},
          {"azimuth_deg", rad2deg(s.target.azimuth_rad)},
          {"velocity_mps", s.target.velocity_mps}}},
        {"jammer", {{"range_m", s.jammer.range_m}, {"azimuth_deg", rad2deg(s.jammer.azimuth_rad)}}},
    };
    root["radar"] = {
        {"tx_count", r.tx_count},
        {"rx_count", r.rx_count},
        {"spacing_m", r.spacing_m},
        {"pulse_width_s", r.pulse_width_s},
        {"bandwidth_hz", r.bandwidth_hz},
        {"subarray_offset_hz", r.subarray_offset_hz},
        {"sample_rate_hz", r.explicit_sample_rate ? json(r.sample_rate_hz) : json(nullptr)},
        {"waveform", cfg.waveform},
        {"strict_paper_mode", cfg.strict_paper_mode},
    };
    root["jammer"] = {
        {"mode", jp.mode == JammerMode::sf ? "sf" : "af"},
        {"antennas", jp.antennas},
        {"delta_f_prime_hz", jp.offset_hz},
        {"spacing_m", opt_json(jp.spacing_m)},
        {"jnr_db", opt_json(jp.jnr_db)},
        {"rho", jp.rho.empty() ? json(nullptr) : json(jp.rho)},
        {"threshold_scale", opt_json(jp.threshold_scale)},
    };
    root["matched_filter"] = {
        {"center_range_m", cfg.mf.center_range_m},
        {"half_window_m", cfg.mf.half_window_m},
        {"noise", cfg.mf.noise},
        {"threshold_db", cfg.mf.threshold_db},
        {"element", cfg.mf.element},
        {"channel", cfg.mf.channel},
        {"downconversion_range_m", opt_json(cfg.mf.downconversion_range_m)},
    };
    root["sweep"] = {
        {"subarrays", cfg.sweep.subarrays},
        {"antennas", cfg.sweep.antennas},
        {"delta_f_prime_hz", grid_json(cfg.sweep.offsets)},
        {"grid", grid_json(cfg.sweep.grid)},
        {"covariance", covariance_name(cfg.sweep.covariance)},
        {"leakage", leakage_name(cfg.sweep.leakage)},
    };
    root["run"] = {{"seed", cfg.run.seed}, {"trials", cfg.run.trials}, {"threads", cfg.run.threads}};
    return root.dump(2) + "\n";
}

void validate(const BenchConfig& cfg)
{
    validate(cfg.scenario);
    if (cfg.waveform != "lfm" && cfg.waveform != "rect")
        fail("radar.waveform must be 'lfm' or 'rect'");
    if (cfg.sweep.subarrays.empty())
        fail("sweep.subarrays must list at least one subarray count");
    for (int s : cfg.sweep.subarrays)
        validate(radar_for(cfg, s), cfg.scenario, cfg.strict_paper_mode);
    for (int q : cfg.sweep.antennas)
        if (q < 1)
            fail("sweep.antennas entries must be positive");
    if (!cfg.jammer.rho.empty() && int(cfg.jammer.rho.size()) != cfg.jammer.antennas)
        throw Error(Errc::length_mismatch, "jammer.rho length differs from jammer.antennas");
    if (!cfg.jammer.rho.empty() && !cfg.sweep.antennas.empty())
        fail("jammer.rho cannot be combined with sweep.antennas");
    if (cfg.jammer.antennas < 1)
        throw Error(Errc::bad_jammer_count, "jammer needs at least one antenna");
    if (cfg.run.trials < 1)
        throw Error(Errc::too_few_trials, "run.trials must be at least 1");
    if (cfg.run.threads < 1)
        fail("run.threads must be at least 1");
    if (cfg.sweep.offsets.points < 1 || cfg.sweep.grid.points < 1)
        fail("grids need at least one point");
    if (cfg.mf.half_window_m <= 0.0)
        fail("matched_filter.half_window_m must be positive");
}

RadarConfig radar_for(const BenchConfig& cfg, int subarrays)
{
    return cfg.radar.with_subarrays(subarrays);
}

Pulse base_pulse(const BenchConfig& cfg, const RadarConfig& radar)
{
    if (cfg.waveform == "rect")
        return rect_pulse(radar.pulse_width_s, radar.sample_rate_hz);
    return lfm_pulse(radar.pulse_width_s, radar.bandwidth_hz, radar.sample_rate_hz);
}

ArrayCase case_for(int subarrays) { return subarrays == 1 ? ArrayCase::pa : ArrayCase::fdamimo; }

JammerSpec resolve_jammer(const BenchConfig& cfg, ArrayCase c, const RadarConfig& radar)
{
    const JammerPlan& jp = cfg.jammer;
    const Scenario& scn = cfg.scenario;
    double spacing = jp.spacing_m.value_or(scn.wavelength() / 2.0);
    JammerSpec spec;
    if (!jp.rho.empty()) {
        spec = make_jammer(jp.antennas, jp.offset_hz, 0.0, jp.mode, spacing);
        spec.amplitudes = jp.rho;
    } else if (jp.threshold_scale) {
        cplx gain = transmit_gain_toward(c, radar, scn, scn.jammer_direction());
        double per = required_jamming_power(coherent_count(c, radar), scn.target_power, gain);
        spec = make_jammer(jp.antennas, jp.offset_hz, *jp.threshold_scale * per * jp.antennas,
                           jp.mode, spacing);
    } else {
        double total = db_to_linear(jp.jnr_db.value_or(30.0)) * scn.noise_power;
        spec = make_jammer(jp.antennas, jp.offset_hz, total, jp.mode, spacing);
    }
    validate(spec, scn, cfg.strict_paper_mode);
    return spec;
}

}  // namespace ecm
