#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmimo/csi.hpp"
#include "dmimo/metrics.hpp"
#include "dmimo/random.hpp"
#include "dmimo/scenario.hpp"

namespace dmimo {

struct DropDiagnostics
{
    double zf_condition_number = 1.0;
    int n_impulsive_events = 0;
    int n_los_links = 0;
    double min_power = 0.0;
    double max_power = 0.0;
    double max_interference_ratio = 0.0; // true-channel cross terms over signal
};

struct DropResult
{
    RVector sinr; // linear, per AC
    DropDiagnostics diagnostics;
};

/// Validated config with the per-campaign constants materialized once.
struct PreparedScenario
{
    ScenarioConfig config;
    Deployment deployment;
    double sigma_w2 = 0.0;
    EstimationContext estimation;
};

PreparedScenario prepare(const ScenarioConfig& cfg);

DropResult run_drop(const PreparedScenario& scenario, std::uint64_t drop_seed);
DropResult run_drop(const ScenarioConfig& cfg, std::uint64_t drop_seed);

/// Seed of drop `drop_id` (0-based) in a campaign.
inline std::uint64_t drop_seed(std::uint64_t master_seed, std::uint64_t drop_id)
{
    return derive_seed(master_seed, drop_id);
}

struct CampaignOptions
{
    int workers = 1;
    bool skip_failed_drops = false; // default is fail-fast
};

struct DropFailure
{
    std::uint64_t drop_id = 0;
    std::string message;
};

struct CampaignDiagnostics
{
    double max_zf_condition_number = 1.0;
    std::uint64_t n_ill_conditioned_drops = 0;
    std::uint64_t n_impulsive_events = 0;
    std::uint64_t n_los_links = 0;
};

struct CampaignResult
{
    SinrDistribution distribution;
    ScenarioConfig config;
    std::uint64_t master_seed = 0;
    std::uint64_t n_drops = 0;
    double wall_time_s = 0.0;
    CampaignDiagnostics diagnostics;
    std::vector<DropFailure> failures;
};

/// Runs drops 0..n_drops-1 and pools their samples in drop order. The result
/// does not depend on the worker count.
CampaignResult run_campaign(const ScenarioConfig& cfg, std::uint64_t n_drops, std::uint64_t master_seed,
                            const CampaignOptions& options = {});

enum class SweepParameter { K, Epsilon, J, Scheme, Mode, PowerRule, Csi };

SweepParameter parse_sweep_parameter(std::string_view name);
const char* to_string(SweepParameter parameter);

/// Copy of `base` with one parameter set from its textual value; validated.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter, const std::string& value);

struct SweepEntry
{
    std::string value;
    std::optional<CampaignResult> result;
    std::string error; // set when the value was rejected or the campaign failed
    bool rejected = false; // the value itself was invalid
};

/// One campaign per value. Every campaign reuses `master_seed`, so the
/// values are compared on common random numbers.
std::vector<SweepEntry> run_sweep(const ScenarioConfig& base, SweepParameter parameter,
                                  const std::vector<std::string>& values, std::uint64_t n_drops,
                                  std::uint64_t master_seed, const CampaignOptions& options = {});

} // namespace dmimo
