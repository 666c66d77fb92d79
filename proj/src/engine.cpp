#include "dmimo/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "dmimo/beamforming.hpp"
#include "dmimo/errors.hpp"
#include "dmimo/power.hpp"
#include "dmimo/random.hpp"

namespace dmimo {

PreparedScenario prepare(const ScenarioConfig& cfg)
{
    validate_config(cfg);
    PreparedScenario s;
    s.config = cfg;
    s.deployment = place_aps(cfg.deployment.J, cfg.hall, cfg.deployment.M_TOT);
    s.sigma_w2 = thermal_noise_power(cfg.budget.bandwidth_hz, cfg.budget.noise_figure_db);
    s.estimation = make_estimation_context(cfg);
    return s;
}

DropResult run_drop(const PreparedScenario& scenario, std::uint64_t seed)
{
    const ScenarioConfig& cfg = scenario.config;

    Rng positions_rng = make_stream(seed, Stage::Positions);
    const std::vector<Point3> acs = drop_acs(cfg.K, cfg.hall, positions_rng);

    Rng channel_rng = make_stream(seed, Stage::Channel);
    ChannelRealization real = build_channel(cfg, scenario.deployment, acs, channel_rng);

    Rng impulsive_rng = make_stream(seed, Stage::Impulsive);
    const NoiseVector noise = sample_impulsive(cfg.impulsive, scenario.sigma_w2, cfg.K, impulsive_rng);

    Rng estimation_rng = make_stream(seed, Stage::Estimation);
    real = estimate_all(std::move(real), cfg.csi, scenario.estimation, estimation_rng);

    const Association assoc = associate(real.large_scale);
    const PrecodingMatrix precoder = build_precoder(cfg.mode, cfg.scheme, real.h_hat, assoc);

    const PowerVector power =
        cfg.power_rule == PowerRule::EPA
            ? epa(cfg.K, cfg.budget.p_ap_total)
            : mpa_solve(build_mpa_instance(real.h_hat, precoder.g, noise, cfg.budget.p_ap_total));

    const RMatrix gains = link_gains(real.h, precoder.g);
    DropResult out;
    out.sinr = sinr(gains, power, noise);
    for (Eigen::Index k = 0; k < out.sinr.size(); ++k)
        if (!(out.sinr[k] > 0.0) || !std::isfinite(out.sinr[k]))
            throw NumericalError("non-positive or non-finite SINR " + std::to_string(out.sinr[k]) + " for AC " +
                                 std::to_string(k) + " (cond " + std::to_string(precoder.max_condition_number) +
                                 ")");

    auto& d = out.diagnostics;
    d.zf_condition_number = precoder.max_condition_number;
    d.n_impulsive_events = noise.n_events();
    d.n_los_links = static_cast<int>(real.large_scale.los.count());
    d.min_power = power.p.minCoeff();
    d.max_power = power.p.maxCoeff();
    d.max_interference_ratio = max_interference_ratio(gains, power);
    return out;
}

DropResult run_drop(const ScenarioConfig& cfg, std::uint64_t seed) { return run_drop(prepare(cfg), seed); }

CampaignResult run_campaign(const ScenarioConfig& cfg, std::uint64_t n_drops, std::uint64_t master_seed,
                            const CampaignOptions& options)
{
    if (n_drops < 1)
        throw ConfigError("drops", "drops must be >= 1");
    const PreparedScenario scenario = prepare(cfg);
    const int K = cfg.K;
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> sinr_flat(n_drops * static_cast<std::uint64_t>(K));
    std::vector<char> failed(n_drops, 0);
    std::vector<DropFailure> failures;
    std::mutex failure_mutex;
    std::atomic<bool> abort{false};
    std::atomic<std::uint64_t> next{0};
    constexpr std::uint64_t kChunk = 64;

    struct Partial
    {
        CampaignDiagnostics diag;
    };
    const int workers = std::max(1, options.workers);
    std::vector<Partial> partials(workers);

    auto work = [&](int worker) {
        auto& diag = partials[worker].diag;
        while (!abort.load(std::memory_order_relaxed))
        {
            const std::uint64_t begin = next.fetch_add(kChunk);
            if (begin >= n_drops)
                break;
            const std::uint64_t end = std::min(n_drops, begin + kChunk);
            for (std::uint64_t i = begin; i < end; ++i)
            {
                try
                {
                    const DropResult r = run_drop(scenario, drop_seed(master_seed, i));
                    std::copy(r.sinr.data(), r.sinr.data() + K, sinr_flat.begin() + i * K);
                    const auto& d = r.diagnostics;
                    diag.max_zf_condition_number = std::max(diag.max_zf_condition_number, d.zf_condition_number);
                    diag.n_ill_conditioned_drops += d.zf_condition_number > kIllConditionedThreshold;
                    diag.n_impulsive_events += d.n_impulsive_events;
                    diag.n_los_links += d.n_los_links;
                }
                catch (const Error& e)
                {
                    failed[i] = 1;
                    std::lock_guard lock(failure_mutex);
                    failures.push_back({i, e.what()});
                    if (!options.skip_failed_drops)
                        abort = true;
                }
            }
        }
    };

    if (workers == 1)
        work(0);
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }

    std::sort(failures.begin(), failures.end(),
              [](const DropFailure& a, const DropFailure& b) { return a.drop_id < b.drop_id; });
    if (!failures.empty() && !options.skip_failed_drops)
        throw DropError(failures.front().drop_id, failures.front().message);

    CampaignResult result;
    result.config = cfg;
    result.master_seed = master_seed;
    result.n_drops = n_drops;
    result.failures = std::move(failures);
    for (const auto& p : partials)
    {
        auto& d = result.diagnostics;
        d.max_zf_condition_number = std::max(d.max_zf_condition_number, p.diag.max_zf_condition_number);
        d.n_ill_conditioned_drops += p.diag.n_ill_conditioned_drops;
        d.n_impulsive_events += p.diag.n_impulsive_events;
        d.n_los_links += p.diag.n_los_links;
    }
    result.distribution.reserve(sinr_flat.size());
    for (std::uint64_t i = 0; i < n_drops; ++i)
    {
        if (failed[i])
            continue;
        for (int k = 0; k < K; ++k)
            result.distribution.add(i, k, sinr_flat[i * K + k]);
    }
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    if (name == "K")
        return SweepParameter::K;
    if (name == "epsilon")
        return SweepParameter::Epsilon;
    if (name == "J")
        return SweepParameter::J;
    if (name == "scheme")
        return SweepParameter::Scheme;
    if (name == "mode")
        return SweepParameter::Mode;
    if (name == "power_rule")
        return SweepParameter::PowerRule;
    if (name == "csi")
        return SweepParameter::Csi;
    throw ConfigError("param", "unsupported sweep parameter '" + std::string(name) +
                                   "' (expected K, epsilon, J, scheme, mode, power_rule or csi)");
}

const char* to_string(SweepParameter parameter)
{
    switch (parameter)
    {
    case SweepParameter::K: return "K";
    case SweepParameter::Epsilon: return "epsilon";
    case SweepParameter::J: return "J";
    case SweepParameter::Scheme: return "scheme";
    case SweepParameter::Mode: return "mode";
    case SweepParameter::PowerRule: return "power_rule";
    case SweepParameter::Csi: return "csi";
    }
    return "?";
}

namespace {

template <typename T>
T parse_number(const std::string& text, const char* field)
{
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(field, "cannot parse '" + text + "'");
    return value;
}

} // namespace

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter, const std::string& value)
{
    ScenarioConfig cfg = base;
    switch (parameter)
    {
    case SweepParameter::K: cfg.K = parse_number<int>(value, "K"); break;
    case SweepParameter::Epsilon: cfg.impulsive.epsilon = parse_number<double>(value, "impulsive.epsilon"); break;
    case SweepParameter::J: cfg.deployment.J = parse_number<int>(value, "deployment.J"); break;
    case SweepParameter::Scheme: cfg.scheme = parse_scheme(value); break;
    case SweepParameter::Mode: cfg.mode = parse_mode(value); break;
    case SweepParameter::PowerRule: cfg.power_rule = parse_power_rule(value); break;
    case SweepParameter::Csi: cfg.csi = parse_csi(value); break;
    }
    validate_config(cfg);
    return cfg;
}

std::vector<SweepEntry> run_sweep(const ScenarioConfig& base, SweepParameter parameter,
                                  const std::vector<std::string>& values, std::uint64_t n_drops,
                                  std::uint64_t master_seed, const CampaignOptions& options)
{
    std::vector<SweepEntry> out;
    out.reserve(values.size());
    for (const auto& v : values)
    {
        SweepEntry entry;
        entry.value = v;
        try
        {
            const ScenarioConfig cfg = apply_sweep_value(base, parameter, v);
            entry.result = run_campaign(cfg, n_drops, master_seed, options);
        }
        catch (const ConfigError& e)
        {
            entry.error = e.what();
            entry.rejected = true;
        }
        catch (const Error& e)
        {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace dmimo
