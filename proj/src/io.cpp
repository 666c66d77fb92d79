#include "dmimo/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>

#include "dmimo/errors.hpp"
#include "dmimo/units.hpp"

#ifndef DMIMO_REVISION
#define DMIMO_REVISION "unknown"
#endif

namespace dmimo {

const char* revision() { return DMIMO_REVISION; }

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path)
{
    if (!obj.is_object())
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, _] : obj.items())
    {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigError(join(path, key), "unknown key");
    }
}

template <typename T>
void read(const Json& obj, const char* key, T& out, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return;
    const std::string field = join(path, key);
    if constexpr (std::is_same_v<T, int>)
    {
        if (!it->is_number_integer())
            throw ConfigError(field, "expected an integer");
        out = it->template get<int>();
    }
    else if constexpr (std::is_same_v<T, double>)
    {
        if (!it->is_number())
            throw ConfigError(field, "expected a number");
        out = it->template get<double>();
    }
    else
    {
        if (!it->is_string())
            throw ConfigError(field, "expected a string");
        out = it->template get<std::string>();
    }
}

const Json* section(const Json& obj, const char* key)
{
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void read_coefficients(const Json& obj, const char* key, PathLossCoefficients& c, const std::string& path)
{
    const Json* s = section(obj, key);
    if (!s)
        return;
    const std::string p = join(path, key);
    check_keys(*s, {"a", "b", "c"}, p);
    read(*s, "a", c.intercept_db, p);
    read(*s, "b", c.dist_exp_coeff, p);
    read(*s, "c", c.freq_coeff, p);
}

Json coefficients_json(const PathLossCoefficients& c)
{
    return Json{{"a", c.intercept_db}, {"b", c.dist_exp_coeff}, {"c", c.freq_coeff}};
}

} // namespace

ScenarioConfig config_from_json(const Json& j)
{
    ScenarioConfig cfg;
    check_keys(j, {"hall", "deployment", "budget", "K", "mode", "scheme", "power_rule", "csi", "impulsive", "channel"},
               "");

    if (const Json* s = section(j, "hall"))
    {
        check_keys(*s, {"length_m", "width_m", "height_m", "ap_height_m", "ac_height_m"}, "hall");
        read(*s, "length_m", cfg.hall.length_m, "hall");
        read(*s, "width_m", cfg.hall.width_m, "hall");
        read(*s, "height_m", cfg.hall.height_m, "hall");
        read(*s, "ap_height_m", cfg.hall.ap_height_m, "hall");
        read(*s, "ac_height_m", cfg.hall.ac_height_m, "hall");
    }
    if (const Json* s = section(j, "deployment"))
    {
        check_keys(*s, {"J", "M_TOT"}, "deployment");
        read(*s, "J", cfg.deployment.J, "deployment");
        read(*s, "M_TOT", cfg.deployment.M_TOT, "deployment");
    }
    if (const Json* s = section(j, "budget"))
    {
        check_keys(*s, {"p_ap_dbm", "p_ac_dbm", "bandwidth_hz", "carrier_hz", "noise_figure_db", "T"}, "budget");
        double p_ap_dbm = watt_to_dbm(cfg.budget.p_ap_total);
        double p_ac_dbm = watt_to_dbm(cfg.budget.p_ac);
        read(*s, "p_ap_dbm", p_ap_dbm, "budget");
        read(*s, "p_ac_dbm", p_ac_dbm, "budget");
        cfg.budget.p_ap_total = dbm_to_watt(p_ap_dbm);
        cfg.budget.p_ac = dbm_to_watt(p_ac_dbm);
        read(*s, "bandwidth_hz", cfg.budget.bandwidth_hz, "budget");
        read(*s, "carrier_hz", cfg.budget.carrier_hz, "budget");
        read(*s, "noise_figure_db", cfg.budget.noise_figure_db, "budget");
        read(*s, "T", cfg.budget.T, "budget");
    }
    read(j, "K", cfg.K, "");

    std::string text;
    if (j.contains("mode"))
    {
        read(j, "mode", text, "");
        cfg.mode = parse_mode(text);
    }
    if (j.contains("scheme"))
    {
        read(j, "scheme", text, "");
        cfg.scheme = parse_scheme(text);
    }
    if (j.contains("power_rule"))
    {
        read(j, "power_rule", text, "");
        cfg.power_rule = parse_power_rule(text);
    }
    if (j.contains("csi"))
    {
        read(j, "csi", text, "");
        cfg.csi = parse_csi(text);
    }

    if (const Json* s = section(j, "impulsive"))
    {
        check_keys(*s, {"gamma_db", "epsilon"}, "impulsive");
        double gamma_db = linear_to_db(cfg.impulsive.gamma_linear);
        read(*s, "gamma_db", gamma_db, "impulsive");
        cfg.impulsive.gamma_linear = db_to_linear(gamma_db);
        read(*s, "epsilon", cfg.impulsive.epsilon, "impulsive");
    }
    if (const Json* s = section(j, "channel"))
    {
        check_keys(*s,
                   {"pl_los", "pl_nlos", "shadow_sigma_los_db", "shadow_sigma_nlos_db", "los_decay_m", "d_min_m"},
                   "channel");
        read_coefficients(*s, "pl_los", cfg.channel.pl_los, "channel");
        read_coefficients(*s, "pl_nlos", cfg.channel.pl_nlos, "channel");
        read(*s, "shadow_sigma_los_db", cfg.channel.shadow_sigma_los_db, "channel");
        read(*s, "shadow_sigma_nlos_db", cfg.channel.shadow_sigma_nlos_db, "channel");
        read(*s, "los_decay_m", cfg.channel.los_decay_m, "channel");
        read(*s, "d_min_m", cfg.channel.d_min_m, "channel");
    }

    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    return config_from_json(j);
}

Json config_to_json(const ScenarioConfig& cfg)
{
    Json j;
    j["hall"] = {{"length_m", cfg.hall.length_m},
                 {"width_m", cfg.hall.width_m},
                 {"height_m", cfg.hall.height_m},
                 {"ap_height_m", cfg.hall.ap_height_m},
                 {"ac_height_m", cfg.hall.ac_height_m}};
    j["deployment"] = {{"J", cfg.deployment.J}, {"M_TOT", cfg.deployment.M_TOT}};
    j["budget"] = {{"p_ap_dbm", watt_to_dbm(cfg.budget.p_ap_total)},
                   {"p_ac_dbm", watt_to_dbm(cfg.budget.p_ac)},
                   {"bandwidth_hz", cfg.budget.bandwidth_hz},
                   {"carrier_hz", cfg.budget.carrier_hz},
                   {"noise_figure_db", cfg.budget.noise_figure_db},
                   {"T", cfg.budget.T}};
    j["K"] = cfg.K;
    j["mode"] = to_string(cfg.mode);
    j["scheme"] = to_string(cfg.scheme);
    j["power_rule"] = to_string(cfg.power_rule);
    j["csi"] = to_string(cfg.csi);
    j["impulsive"] = {{"gamma_db", linear_to_db(cfg.impulsive.gamma_linear)}, {"epsilon", cfg.impulsive.epsilon}};
    j["channel"] = {{"pl_los", coefficients_json(cfg.channel.pl_los)},
                    {"pl_nlos", coefficients_json(cfg.channel.pl_nlos)},
                    {"shadow_sigma_los_db", cfg.channel.shadow_sigma_los_db},
                    {"shadow_sigma_nlos_db", cfg.channel.shadow_sigma_nlos_db},
                    {"los_decay_m", cfg.channel.los_decay_m},
                    {"d_min_m", cfg.channel.d_min_m}};
    return j;
}

MpaInstance instance_from_json(const Json& j)
{
    check_keys(j, {"R", "f", "q", "p_ap"}, "");
    for (const char* key : {"R", "f", "q", "p_ap"})
        if (!j.contains(key))
            throw ConfigError(key, "missing");
    MpaInstance inst;
    try
    {
        const auto f = j.at("f").get<std::vector<double>>();
        const auto q = j.at("q").get<std::vector<double>>();
        const auto R = j.at("R").get<std::vector<std::vector<double>>>();
        const auto K = static_cast<Eigen::Index>(f.size());
        inst.f = Eigen::Map<const RVector>(f.data(), K);
        inst.q = Eigen::Map<const RVector>(q.data(), static_cast<Eigen::Index>(q.size()));
        inst.R.resize(static_cast<Eigen::Index>(R.size()), K);
        for (std::size_t r = 0; r < R.size(); ++r)
        {
            if (static_cast<Eigen::Index>(R[r].size()) != K)
                throw ConfigError("R", "row " + std::to_string(r) + " has the wrong length");
            for (Eigen::Index c = 0; c < K; ++c)
                inst.R(static_cast<Eigen::Index>(r), c) = R[r][c];
        }
        inst.p_ap = j.at("p_ap").get<double>();
    }
    catch (const Json::exception& e)
    {
        throw ConfigError("instance", e.what());
    }
    try
    {
        validate(inst);
    }
    catch (const DomainError& e)
    {
        throw ConfigError("instance", e.what());
    }
    return inst;
}

Json instance_to_json(const MpaInstance& inst)
{
    Json R = Json::array();
    for (Eigen::Index r = 0; r < inst.R.rows(); ++r)
    {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < inst.R.cols(); ++c)
            row.push_back(inst.R(r, c));
        R.push_back(std::move(row));
    }
    return Json{{"R", std::move(R)},
                {"f", std::vector<double>(inst.f.data(), inst.f.data() + inst.f.size())},
                {"q", std::vector<double>(inst.q.data(), inst.q.data() + inst.q.size())},
                {"p_ap", inst.p_ap}};
}

void write_samples_csv(std::ostream& out, const SinrDistribution& dist)
{
    out << "drop_id,ac_id,sinr_db\n";
    char line[96];
    for (const auto& s : dist.samples())
    {
        const int n = std::snprintf(line, sizeof line, "%" PRIu64 ",%d,%.6f\n", s.drop_id, s.ac_id, s.sinr_db());
        out.write(line, n);
    }
}

void write_cdf_csv(std::ostream& out, const SinrDistribution& dist, std::size_t max_points)
{
    out << "sinr_db,empirical_cdf\n";
    const auto& sorted = dist.sorted_linear();
    const std::size_t n = sorted.size();
    const std::size_t points = std::min(n, max_points);
    char line[96];
    for (std::size_t i = 1; i <= points; ++i)
    {
        const std::size_t rank = (i * n + points - 1) / points; // ceil(i n / points)
        const int len = std::snprintf(line, sizeof line, "%.6f,%.9g\n", 10.0 * std::log10(sorted[rank - 1]),
                                      static_cast<double>(rank) / static_cast<double>(n));
        out.write(line, len);
    }
}

Json summary_json(const CampaignResult& result)
{
    const auto& dist = result.distribution;
    Json avail;
    for (const auto& [key, level] : {std::pair{"1e-3", 1e-3}, std::pair{"1e-4", 1e-4}, std::pair{"1e-5", 1e-5}})
    {
        try
        {
            avail[key] = availability(dist, level);
        }
        catch (const InsufficientSamplesError&)
        {
            avail[key] = nullptr;
        }
    }

    Json j;
    j["n_samples"] = dist.size();
    j["availability_db"] = std::move(avail);
    j["median_db"] = dist.median_db();
    j["mean_db"] = dist.mean_db();
    j["config"] = config_to_json(result.config);
    j["run"] = {{"tool", "dmimo"},
                {"version", kVersion},
                {"revision", revision()},
                {"master_seed", result.master_seed},
                {"n_drops", result.n_drops},
                {"n_failed_drops", result.failures.size()}};
    j["method"] = {{"pooling", "all (drop, AC) samples"},
                   {"quantile", "lower order statistic at rank ceil(p*n)"},
                   {"sinr", "true channels; precoder and power allocation designed on estimates"},
                   {"mpa_budget", "single total budget shared by all APs"}};
    j["diagnostics"] = {{"max_zf_condition_number", result.diagnostics.max_zf_condition_number},
                        {"n_ill_conditioned_drops", result.diagnostics.n_ill_conditioned_drops},
                        {"n_impulsive_events", result.diagnostics.n_impulsive_events},
                        {"n_los_links", result.diagnostics.n_los_links}};
    return j;
}

} // namespace dmimo
