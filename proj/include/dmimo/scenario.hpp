#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dmimo/channel.hpp"
#include "dmimo/noise.hpp"
#include "dmimo/types.hpp"

namespace dmimo {

struct HallGeometry
{
    double length_m = 100.0;
    double width_m = 50.0;
    double height_m = 6.0;
    double ap_height_m = 6.0;
    double ac_height_m = 2.0;
};

struct DeploymentSpec
{
    int J = 4;
    int M_TOT = 64;
};

struct Deployment
{
    int J = 0;
    int M = 0;
    int M_TOT = 0;
    int grid_cols = 0; // cells along the hall length
    int grid_rows = 0; // cells along the hall width
    std::vector<Point3> ap_positions;
};

// All powers in watts; dBm only appears in config files.
struct RadioBudget
{
    double bandwidth_hz = 10e6;
    double carrier_hz = 3.5e9;
    double p_ap_total = 0.12589254117941673; // 21 dBm
    double p_ac = 0.1;                       // 20 dBm
    double noise_figure_db = 7.0;
    int T = 4;
};

struct ScenarioConfig
{
    HallGeometry hall;
    DeploymentSpec deployment;
    RadioBudget budget;
    int K = 4;
    Mode mode = Mode::JT;
    Scheme scheme = Scheme::ZF;
    PowerRule power_rule = PowerRule::EPA;
    CsiMode csi = CsiMode::Perfect;
    ImpulsiveNoiseParams impulsive;
    ChannelModelParams channel;
};

/// Grid used to tile the hall into J congruent cells: (cols along length, rows along width).
std::pair<int, int> grid_factorization(int J, const HallGeometry& hall);

/// One AP at the centroid of each grid cell, x varying fastest.
Deployment place_aps(int J, const HallGeometry& hall, int M_TOT);

std::vector<Point3> drop_acs(int K, const HallGeometry& hall, Rng& rng);

/// Throws ConfigError naming the first offending field.
const ScenarioConfig& validate_config(const ScenarioConfig& cfg);

const char* to_string(Mode mode);
const char* to_string(Scheme scheme);
const char* to_string(PowerRule rule);
const char* to_string(CsiMode csi);
Mode parse_mode(std::string_view text);
Scheme parse_scheme(std::string_view text);
PowerRule parse_power_rule(std::string_view text);
CsiMode parse_csi(std::string_view text);

} // namespace dmimo
