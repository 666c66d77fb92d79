// dmimo: command-line front end for the distributed-MIMO downlink simulator.
//
//   dmimo simulate CONFIG [--drops N] [--seed S] [--out DIR] [--workers W]
//   dmimo sweep CONFIG --param NAME --values A,B,... [--drops N] [--seed S] [--out DIR]
//   dmimo oracle-check [--instances N] [--kmax K] [--seed S] [--tol T]
//   dmimo validate CONFIG
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid configuration or usage.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dmimo/engine.hpp"
#include "dmimo/errors.hpp"
#include "dmimo/io.hpp"
#include "dmimo/power.hpp"

namespace fs = std::filesystem;
using namespace dmimo;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

// p*n below this makes the tail quantile an unstable estimate.
constexpr double kMinTailCount = 10.0;

int default_workers()
{
    if (const char* env = std::getenv("DMIMO_WORKERS"))
    {
        try
        {
            const int w = std::stoi(env);
            if (w >= 1)
                return w;
        }
        catch (const std::exception&)
        {
        }
        std::cerr << "warning: ignoring DMIMO_WORKERS='" << env << "'\n";
    }
    return 1;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void write_json(const fs::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Json manifest_json(const ScenarioConfig& cfg, std::uint64_t seed, std::uint64_t drops)
{
    Json m;
    m["tool"] = "dmimo";
    m["version"] = kVersion;
    m["revision"] = revision();
    m["timestamp"] = utc_timestamp();
    m["master_seed"] = seed;
    m["n_drops"] = drops;
    m["config"] = config_to_json(cfg);
    return m;
}

void write_outputs(const fs::path& dir, const CampaignResult& result)
{
    fs::create_directories(dir);
    write_json(dir / "manifest.json", manifest_json(result.config, result.master_seed, result.n_drops));
    {
        std::ofstream out(dir / "samples.csv");
        write_samples_csv(out, result.distribution);
    }
    {
        std::ofstream out(dir / "cdf.csv");
        write_cdf_csv(out, result.distribution);
    }
    write_json(dir / "summary.json", summary_json(result));
}

void check_drops(long long drops, int K)
{
    if (drops < 1)
        throw ConfigError("drops", "drops must be >= 1");
    if (static_cast<double>(drops) * K * 1e-5 < kMinTailCount)
        std::cerr << "warning: " << drops << " drops x " << K << " ACs give fewer than " << kMinTailCount
                  << " samples below the 1e-5 quantile; use --drops >= "
                  << static_cast<long long>(std::ceil(kMinTailCount / (1e-5 * K)))
                  << " for a stable availability estimate\n";
}

std::string format_db(const std::optional<CampaignResult>& r, double level)
{
    if (!r)
        return "";
    try
    {
        std::ostringstream out;
        out << std::fixed << std::setprecision(6) << availability(r->distribution, level);
        return out.str();
    }
    catch (const InsufficientSamplesError&)
    {
        return "";
    }
}

// Directory-safe rendering of a sweep value.
std::string value_dir(const std::string& param, const std::string& value)
{
    std::string name = param + "_";
    for (char c : value)
        name += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') ? c : '_';
    return name;
}

struct CommonArgs
{
    std::string config;
    long long drops = 100000;
    std::uint64_t seed = 1;
    std::string out = "out";
    int workers = 1;
    bool skip_failed = false;
};

void add_campaign_flags(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("config", args.config, "JSON scenario config")->required();
    cmd->add_option("--drops", args.drops, "Monte Carlo drops")->capture_default_str();
    cmd->add_option("--seed", args.seed, "master seed")->capture_default_str();
    cmd->add_option("--out", args.out, "output directory")->capture_default_str();
    cmd->add_option("--workers", args.workers, "worker threads (default: $DMIMO_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--skip-failed-drops", args.skip_failed, "log and skip failing drops instead of aborting");
}

int cmd_simulate(const CommonArgs& args)
{
    const ScenarioConfig cfg = load_config(args.config);
    check_drops(args.drops, cfg.K);
    const CampaignResult result = run_campaign(cfg, static_cast<std::uint64_t>(args.drops), args.seed,
                                               {args.workers, args.skip_failed});
    write_outputs(args.out, result);
    for (const auto& f : result.failures)
        std::cerr << "skipped drop " << f.drop_id << ": " << f.message << '\n';
    std::cout << "wrote " << result.distribution.size() << " samples to " << args.out << " in " << std::fixed
              << std::setprecision(1) << result.wall_time_s << " s\n";
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param_name, const std::vector<std::string>& values)
{
    const SweepParameter param = parse_sweep_parameter(param_name);
    const ScenarioConfig base = load_config(args.config);
    check_drops(args.drops, base.K);

    const auto entries = run_sweep(base, param, values, static_cast<std::uint64_t>(args.drops), args.seed,
                                   {args.workers, args.skip_failed});

    fs::create_directories(args.out);
    std::ofstream csv(fs::path(args.out) / "sweep.csv");
    csv << "value,availability_db@1e-5,availability_db@1e-4,median_db\n";
    bool any_config_error = false;
    bool any_runtime_error = false;
    for (const auto& e : entries)
    {
        std::string median;
        if (e.result)
        {
            write_outputs(fs::path(args.out) / value_dir(param_name, e.value), *e.result);
            std::ostringstream m;
            m << std::fixed << std::setprecision(6) << e.result->distribution.median_db();
            median = m.str();
        }
        else
        {
            std::cerr << "error: " << param_name << "=" << e.value << ": " << e.error << '\n';
            (e.rejected ? any_config_error : any_runtime_error) = true;
        }
        csv << e.value << ',' << format_db(e.result, 1e-5) << ',' << format_db(e.result, 1e-4) << ',' << median
            << '\n';
    }
    std::cout << "wrote " << entries.size() << " sweep rows to " << args.out << '\n';
    if (any_config_error)
        return kExitConfig;
    return any_runtime_error ? kExitRuntime : 0;
}

double min_sinr(const MpaInstance& inst, const PowerVector& p)
{
    return estimated_sinr(inst, p.p).minCoeff();
}

// Relative min-SINR discrepancy between mpa_solve and the bisection oracle.
double discrepancy(const MpaInstance& inst)
{
    try
    {
        const double a = min_sinr(inst, mpa_solve(inst));
        const double b = min_sinr(inst, mpa_oracle(inst));
        return std::abs(a - b) / b;
    }
    catch (const NumericalError&)
    {
        return std::numeric_limits<double>::infinity();
    }
}

struct OracleArgs
{
    int instances = 100;
    int kmax = 4;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    bool zero_coupling = false;
    std::string instance_file;
    std::string dump = "oracle_failure.json";
};

int cmd_oracle_check(const OracleArgs& args)
{
    std::vector<MpaInstance> instances;
    if (!args.instance_file.empty())
    {
        std::ifstream in(args.instance_file);
        if (!in)
            throw ConfigError("instance", "cannot read " + args.instance_file);
        Json j;
        try
        {
            j = Json::parse(in);
        }
        catch (const Json::parse_error& e)
        {
            throw ConfigError("instance", e.what());
        }
        instances.push_back(instance_from_json(j));
    }
    else
    {
        if (args.instances < 1)
            throw ConfigError("instances", "must be >= 1");
        if (args.kmax < 1)
            throw ConfigError("kmax", "must be >= 1");
        const int kmin = std::min(2, args.kmax);
        for (int i = 0; i < args.instances; ++i)
        {
            Rng rng(derive_seed(args.seed, static_cast<std::uint64_t>(i)));
            const int K = kmin + static_cast<int>(uniform01(rng) * (args.kmax - kmin + 1));
            instances.push_back(random_instance(K, rng, args.zero_coupling));
        }
    }

    double worst = 0.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < instances.size(); ++i)
    {
        const double d = discrepancy(instances[i]);
        if (!(d <= worst))
        {
            worst = d;
            worst_index = i;
        }
    }
    std::cout << "instances: " << instances.size() << "\nmax relative min-SINR discrepancy: " << std::scientific
              << std::setprecision(3) << worst << "\ntolerance: " << args.tol << '\n';
    if (worst < args.tol)
        return 0;
    write_json(args.dump, instance_to_json(instances[worst_index]));
    std::cerr << "FAILED: instance " << worst_index << " dumped to " << args.dump << '\n';
    return kExitRuntime;
}

int cmd_validate(const std::string& path)
{
    const ScenarioConfig cfg = load_config(path);
    std::cout << config_to_json(cfg).dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo simulator for distributed-MIMO downlink in an indoor factory"};
    app.set_version_flag("--version", std::string(kVersion) + " (" + revision() + ")");
    app.require_subcommand(1);

    CommonArgs sim;
    sim.workers = default_workers();
    auto* simulate = app.add_subcommand("simulate", "run one campaign and write its result files");
    add_campaign_flags(simulate, sim);

    CommonArgs sw;
    sw.workers = default_workers();
    std::string param;
    std::vector<std::string> values;
    auto* sweep = app.add_subcommand("sweep", "run one campaign per parameter value");
    add_campaign_flags(sweep, sw);
    sweep->add_option("--param", param, "K, epsilon, J, scheme, mode, power_rule or csi")->required();
    sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');

    OracleArgs oc;
    auto* oracle = app.add_subcommand("oracle-check", "compare the max-min solver with a bisection oracle");
    oracle->add_option("--instances", oc.instances)->capture_default_str();
    oracle->add_option("--kmax", oc.kmax)->capture_default_str();
    oracle->add_option("--seed", oc.seed)->capture_default_str();
    oracle->add_option("--tol", oc.tol)->capture_default_str();
    oracle->add_flag("--zero-coupling", oc.zero_coupling, "draw interference-free instances (R = 0)");
    oracle->add_option("--instance", oc.instance_file, "check one instance from a JSON file");
    oracle->add_option("--dump", oc.dump, "where to write the worst instance on failure")->capture_default_str();

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "check a config and print it fully resolved");
    validate_cmd->add_option("config", validate_path)->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (*simulate)
            return cmd_simulate(sim);
        if (*sweep)
            return cmd_sweep(sw, param, values);
        if (*oracle)
            return cmd_oracle_check(oc);
        if (*validate_cmd)
            return cmd_validate(validate_path);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
