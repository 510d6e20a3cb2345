#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ecm/config.hpp"
#include "ecm/error.hpp"
#include "ecm/experiments.hpp"

namespace py = pybind11;
using namespace ecm;

namespace {

BenchConfig from_text(const std::string& text, const std::string& experiment)
{
    return text.empty() ? default_config(experiment) : parse_config(text, experiment);
}

py::dict measure(int subarrays, const std::string& scenario, int antennas, double offset_hz, double jnr_db,
                 const std::string& method, const std::string& leakage)
{
    Scenario scn;
    if (scenario == "sidelobe")
        scn.jammer.azimuth_rad = deg2rad(15.0);
    else if (scenario == "mainlobe")
        scn.jammer.range_m = 6010.0;
    else
        throw Error(Errc::config, "scenario must be 'sidelobe' or 'mainlobe'");
    RadarConfig cfg = default_radar(scn, subarrays);
    ArrayCase ac = case_for(subarrays);
    JammerSpec spec = make_jammer(antennas, offset_hz, db_to_linear(jnr_db) * scn.noise_power, JammerMode::sf,
                                  scn.wavelength() / 2.0);
    Method m = method == "closed_form" ? Method::closed_form : Method::numeric;
    Pulse pulse = m == Method::closed_form ? rect_pulse(cfg.pulse_width_s, cfg.sample_rate_hz)
                                           : lfm_pulse(cfg.pulse_width_s, cfg.bandwidth_hz, cfg.sample_rate_hz);
    LeakageModel lm = leakage == "diagonal" ? LeakageModel::diagonal : LeakageModel::full;
    MeasurementTriple t = measurements(ac, cfg, scn, spec, pulse, m, lm);
    py::dict d;
    d["notch_azimuth"] = t.notch_azimuth;
    d["notch_range"] = t.notch_range;
    d["sinr_db"] = linear_to_db(t.sinr);
    d["sinr_exact_db"] = linear_to_db(t.sinr_exact);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "FDA jamming benchmark core";

    py::register_exception<Error>(m, "EcmError", PyExc_RuntimeError);

    m.def("list_experiments", [] {
        py::list out;
        for (const CatalogEntry& e : list_experiments()) {
            py::dict d;
            d["id"] = e.id;
            d["experiment"] = e.experiment;
            d["figures"] = e.figures;
            d["config_template"] = e.config_template;
            d["description"] = e.description;
            out.append(d);
        }
        return out;
    });

    m.def(
        "canonical_config",
        [](const std::string& text, const std::string& experiment) {
            return canonical_config(from_text(text, experiment));
        },
        py::arg("text") = "", py::arg("experiment") = "sinr-sweep");

    m.def(
        "run_experiment",
        [](const std::string& text, const std::filesystem::path& out_dir, const std::string& experiment) {
            ExperimentResult r;
            BenchConfig cfg = from_text(text, experiment);
            {
                py::gil_scoped_release release;
                r = run_experiment(cfg, out_dir);
            }
            py::list checks;
            for (const Check& c : r.checks)
                checks.append(py::dict(py::arg("name") = c.name, py::arg("pass") = c.pass,
                                       py::arg("required") = c.required, py::arg("detail") = c.detail));
            py::dict d;
            d["experiment"] = r.experiment;
            d["files"] = r.files;
            d["checks"] = checks;
            d["passed"] = r.passed();
            return d;
        },
        py::arg("config_text"), py::arg("out_dir"), py::arg("experiment") = "");

    m.def("measurements", &measure, py::arg("subarrays") = 1, py::arg("scenario") = "sidelobe",
          py::arg("antennas") = 4, py::arg("offset_hz") = 0.0, py::arg("jnr_db") = 30.0,
          py::arg("method") = "numeric", py::arg("leakage") = "full");

    m.def(
        "predict_false_targets",
        [](int antennas, double offset_hz, double jammer_range_m) {
            Scenario scn;
            RadarConfig cfg = default_radar(scn, 1);
            JammerSpec spec = make_jammer(antennas, offset_hz, 1.0, JammerMode::sf, scn.wavelength() / 2.0);
            return predict_false_targets(spec, jammer_range_m, cfg, scn).ranges_m;
        },
        py::arg("antennas"), py::arg("offset_hz"), py::arg("jammer_range_m"));
}
