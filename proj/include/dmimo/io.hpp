#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "json.hpp"

#include "dmimo/engine.hpp"
#include "dmimo/power.hpp"
#include "dmimo/scenario.hpp"

namespace dmimo {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Source revision the library was built from ("unknown" outside git).
const char* revision();

/// Missing keys take defaults; unknown keys and bad values throw ConfigError.
/// The result is validated.
ScenarioConfig config_from_json(const Json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Fully materialized config (every key present, powers in dBm).
Json config_to_json(const ScenarioConfig& cfg);

MpaInstance instance_from_json(const Json& j);
Json instance_to_json(const MpaInstance& inst);

/// drop_id,ac_id,sinr_db with 6 decimals, pooled in drop order.
void write_samples_csv(std::ostream& out, const SinrDistribution& dist);
/// sinr_db,empirical_cdf at min(n, max_points) evenly spaced ranks.
void write_cdf_csv(std::ostream& out, const SinrDistribution& dist, std::size_t max_points = 10000);
/// Worker-count independent summary of a campaign.
Json summary_json(const CampaignResult& result);

} // namespace dmimo
