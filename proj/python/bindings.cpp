#include <algorithm>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmimo/beamforming.hpp"
#include "dmimo/channel.hpp"
#include "dmimo/engine.hpp"
#include "dmimo/errors.hpp"
#include "dmimo/io.hpp"
#include "dmimo/metrics.hpp"
#include "dmimo/noise.hpp"
#include "dmimo/power.hpp"
#include "dmimo/scenario.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dmimo;

namespace {

// Configs cross the boundary as JSON text; the Python side handles dicts.
ScenarioConfig parse_config(const std::string& text) { return config_from_json(Json::parse(text)); }

MpaInstance make_instance(const RMatrix& R, const RVector& f, const RVector& q, double p_ap)
{
    MpaInstance inst{R, f, q, p_ap};
    validate(inst);
    return inst;
}

py::dict campaign_dict(const CampaignResult& r)
{
    const auto& samples = r.distribution.samples();
    Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1> drop(samples.size());
    Eigen::VectorXi ac(samples.size());
    RVector sinr(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        drop[i] = samples[i].drop_id;
        ac[i] = samples[i].ac_id;
        sinr[i] = samples[i].sinr_linear;
    }
    py::dict d;
    d["drop_id"] = drop;
    d["ac_id"] = ac;
    d["sinr"] = sinr;
    d["summary"] = summary_json(r).dump();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Distributed-MIMO indoor-factory downlink simulator";
    m.attr("__version__") = kVersion;

    // Translators run newest first, so the base class goes in first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PrecoderError>(m, "PrecoderError", PyExc_ArithmeticError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<InsufficientSamplesError>(m, "InsufficientSamplesError", PyExc_ValueError);

    m.def("resolve_config", [](const std::string& text) { return config_to_json(parse_config(text)).dump(); },
          "config_json"_a, "Validate a JSON config and return it with every default filled in.");

    m.def("place_aps",
          [](int J, int M_TOT) {
              const auto d = place_aps(J, HallGeometry{}, M_TOT);
              RMatrix pos(d.J, 3);
              for (int j = 0; j < d.J; ++j)
                  pos.row(j) << d.ap_positions[j].x, d.ap_positions[j].y, d.ap_positions[j].z;
              return pos;
          },
          "J"_a, "M_TOT"_a = 64, "AP positions (J x 3) in the default hall.");

    m.def("path_loss_db",
          [](double d_3d, double f_ghz, bool los) { return path_loss_db(d_3d, f_ghz, los, ChannelModelParams{}); },
          "d_3d"_a, "f_ghz"_a, "los"_a);
    m.def("los_probability", [](double d_2d) { return los_probability(d_2d, ChannelModelParams{}); }, "d_2d"_a);
    m.def("thermal_noise_power", &thermal_noise_power, "bandwidth_hz"_a, "noise_figure_db"_a);

    m.def("mrt", &mrt, "h"_a);
    m.def("zf",
          [](const CMatrix& H) {
              auto s = zf(H);
              return py::make_tuple(s.g, s.condition_number);
          },
          "H"_a, "Unit-norm zero-forcing columns and cond(H H^H).");

    m.def("epa", [](int K, double p_ap) { return epa(K, p_ap).p; }, "K"_a, "p_ap"_a);
    m.def("mpa_solve",
          [](const RMatrix& R, const RVector& f, const RVector& q, double p_ap) {
              return mpa_solve(make_instance(R, f, q, p_ap)).p;
          },
          "R"_a, "f"_a, "q"_a, "p_ap"_a);
    m.def("mpa_oracle",
          [](const RMatrix& R, const RVector& f, const RVector& q, double p_ap, double tol) {
              return mpa_oracle(make_instance(R, f, q, p_ap), tol).p;
          },
          "R"_a, "f"_a, "q"_a, "p_ap"_a, "tol"_a = 1e-12);
    m.def("estimated_sinr",
          [](const RMatrix& R, const RVector& f, const RVector& q, double p_ap, const RVector& p) {
              return estimated_sinr(make_instance(R, f, q, p_ap), p);
          },
          "R"_a, "f"_a, "q"_a, "p_ap"_a, "p"_a);

    m.def("empirical_quantile",
          [](std::vector<double> v, double p) {
              std::sort(v.begin(), v.end());
              return empirical_quantile(v, p);
          },
          "samples"_a, "p"_a);

    m.def("run_drop",
          [](const std::string& cfg, std::uint64_t seed) { return run_drop(parse_config(cfg), seed).sinr; },
          "config_json"_a, "drop_seed"_a, "Linear SINR of every AC in one drop.");

    m.def("run_campaign",
          [](const std::string& cfg, std::uint64_t n_drops, std::uint64_t seed, int workers) {
              const ScenarioConfig c = parse_config(cfg);
              CampaignResult r;
              {
                  py::gil_scoped_release release;
                  r = run_campaign(c, n_drops, seed, {workers, false});
              }
              return campaign_dict(r);
          },
          "config_json"_a, "n_drops"_a, "master_seed"_a = 1, "workers"_a = 1);
}
