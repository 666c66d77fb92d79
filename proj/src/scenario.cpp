#include "dmimo/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dmimo/errors.hpp"
#include "dmimo/random.hpp"

namespace dmimo {

std::pair<int, int> grid_factorization(int J, const HallGeometry& hall)
{
    if (J < 1)
        throw ConfigError("deployment.J", "J must be at least 1");

    const double target = std::log(hall.length_m / hall.width_m);
    int best_cols = 0;
    double best_err = std::numeric_limits<double>::infinity();
    double best_skew = std::numeric_limits<double>::infinity();
    for (int cols = J; cols >= 1; --cols)
    {
        if (J % cols != 0)
            continue;
        const int rows = J / cols;
        const double ratio = std::log(static_cast<double>(cols) / rows);
        const double err = std::abs(ratio - target);
        const double skew = std::abs(ratio);
        // Equal aspect error: prefer the squarer grid.
        if (err < best_err - 1e-12 || (std::abs(err - best_err) <= 1e-12 && skew < best_skew - 1e-12))
        {
            best_cols = cols;
            best_err = err;
            best_skew = skew;
        }
    }
    if (best_cols == 0)
        throw ConfigError("deployment.J", "no grid factorization tiles the hall with " + std::to_string(J) + " cells");
    return {best_cols, J / best_cols};
}

Deployment place_aps(int J, const HallGeometry& hall, int M_TOT)
{
    if (J < 1)
        throw ConfigError("deployment.J", "J must be at least 1");
    if (M_TOT < 1)
        throw ConfigError("deployment.M_TOT", "M_TOT must be at least 1");
    if (M_TOT % J != 0)
        throw ConfigError("deployment.J", "J must divide M_TOT (J=" + std::to_string(J) +
                                              ", M_TOT=" + std::to_string(M_TOT) + ")");

    const auto [cols, rows] = grid_factorization(J, hall);
    Deployment d;
    d.J = J;
    d.M_TOT = M_TOT;
    d.M = M_TOT / J;
    d.grid_cols = cols;
    d.grid_rows = rows;
    d.ap_positions.reserve(J);
    const double cell_x = hall.length_m / cols;
    const double cell_y = hall.width_m / rows;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            d.ap_positions.push_back({(c + 0.5) * cell_x, (r + 0.5) * cell_y, hall.ap_height_m});
    return d;
}

std::vector<Point3> drop_acs(int K, const HallGeometry& hall, Rng& rng)
{
    if (K < 1)
        throw ConfigError("K", "K must be at least 1");
    std::vector<Point3> acs(K);
    for (auto& p : acs)
    {
        p.x = hall.length_m * uniform01(rng);
        p.y = hall.width_m * uniform01(rng);
        p.z = hall.ac_height_m;
    }
    return acs;
}

namespace {

void require(bool ok, const char* field, const std::string& message)
{
    if (!ok)
        throw ConfigError(field, message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

const ScenarioConfig& validate_config(const ScenarioConfig& cfg)
{
    const auto& hall = cfg.hall;
    require(positive(hall.length_m), "hall.length_m", "must be > 0");
    require(positive(hall.width_m), "hall.width_m", "must be > 0");
    require(positive(hall.height_m), "hall.height_m", "must be > 0");
    require(positive(hall.ap_height_m), "hall.ap_height_m", "must be > 0");
    require(positive(hall.ac_height_m), "hall.ac_height_m", "must be > 0");
    require(hall.ap_height_m <= hall.height_m, "hall.ap_height_m", "must not exceed hall.height_m");
    require(hall.ac_height_m < hall.ap_height_m, "hall.ac_height_m", "must be below hall.ap_height_m");

    const auto& dep = cfg.deployment;
    require(dep.J >= 1, "deployment.J", "must be >= 1");
    require(dep.M_TOT >= 1, "deployment.M_TOT", "must be >= 1");
    require(dep.M_TOT % dep.J == 0, "deployment.J", "J must divide M_TOT");

    const auto& b = cfg.budget;
    require(positive(b.p_ap_total), "budget.p_ap_dbm", "total AP power must be > 0 W");
    require(positive(b.p_ac), "budget.p_ac_dbm", "AC pilot power must be > 0 W");
    require(positive(b.bandwidth_hz), "budget.bandwidth_hz", "must be > 0");
    require(positive(b.carrier_hz), "budget.carrier_hz", "must be > 0");
    require(std::isfinite(b.noise_figure_db), "budget.noise_figure_db", "must be finite");
    require(b.T >= 1, "budget.T", "must be >= 1");

    require(cfg.K >= 1, "K", "must be >= 1");
    if (cfg.csi == CsiMode::Estimated)
        require(b.T >= cfg.K, "budget.T", "T >= K required for orthogonal pilots (T=" + std::to_string(b.T) +
                                              ", K=" + std::to_string(cfg.K) + ")");
    require(!(cfg.scheme == Scheme::CZF && cfg.mode == Mode::JT), "scheme",
            "CZF requires mode SAT (with JT it coincides with ZF)");
    if (cfg.mode == Mode::JT && cfg.scheme == Scheme::ZF)
        require(dep.M_TOT >= cfg.K, "K", "JT-ZF needs M_TOT >= K");

    try
    {
        validate(cfg.impulsive);
        validate(cfg.channel);
    }
    catch (const DomainError& e)
    {
        // Parameter validators report "section.field: message".
        const std::string what = e.what();
        const auto colon = what.find(": ");
        if (colon == std::string::npos)
            throw ConfigError("", what);
        throw ConfigError(what.substr(0, colon), what.substr(colon + 2));
    }
    return cfg;
}

const char* to_string(Mode mode) { return mode == Mode::SAT ? "SAT" : "JT"; }

const char* to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::MRT: return "MRT";
    case Scheme::ZF: return "ZF";
    case Scheme::CZF: return "CZF";
    }
    return "?";
}

const char* to_string(PowerRule rule) { return rule == PowerRule::EPA ? "EPA" : "MPA"; }
const char* to_string(CsiMode csi) { return csi == CsiMode::Perfect ? "perfect" : "estimated"; }

Mode parse_mode(std::string_view text)
{
    if (text == "SAT")
        return Mode::SAT;
    if (text == "JT")
        return Mode::JT;
    throw ConfigError("mode", "expected SAT or JT, got '" + std::string(text) + "'");
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "MRT")
        return Scheme::MRT;
    if (text == "ZF")
        return Scheme::ZF;
    if (text == "CZF")
        return Scheme::CZF;
    throw ConfigError("scheme", "expected MRT, ZF or CZF, got '" + std::string(text) + "'");
}

PowerRule parse_power_rule(std::string_view text)
{
    if (text == "EPA")
        return PowerRule::EPA;
    if (text == "MPA")
        return PowerRule::MPA;
    throw ConfigError("power_rule", "expected EPA or MPA, got '" + std::string(text) + "'");
}

CsiMode parse_csi(std::string_view text)
{
    if (text == "perfect")
        return CsiMode::Perfect;
    if (text == "estimated")
        return CsiMode::Estimated;
    throw ConfigError("csi", "expected perfect or estimated, got '" + std::string(text) + "'");
}

} // namespace dmimo
