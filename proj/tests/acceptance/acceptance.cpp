// Acceptance suite: property checks (1-5) and trend reproduction (6-10).
// Prints one PASS/FAIL line per criterion; exit status is the number of failures.
//
//   acceptance [--drops N] [--workers W] [--only 1,2,...]
//
// Trend campaigns default to 1e6 drops with K = 4.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dmimo/beamforming.hpp"
#include "dmimo/channel.hpp"
#include "dmimo/csi.hpp"
#include "dmimo/engine.hpp"
#include "dmimo/errors.hpp"
#include "dmimo/io.hpp"
#include "dmimo/noise.hpp"
#include "dmimo/power.hpp"
#include "dmimo/random.hpp"
#include "dmimo/scenario.hpp"
#include "unit/support.hpp"

using namespace dmimo;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::uint64_t g_drops = 1000000;
int g_workers = 1;

// ---------------------------------------------------------------- 1. nulling

Outcome nulling()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string worst_case = "none";
    int checked = 0;
    for (int J : {1, 4, 16})
    {
        ScenarioConfig cfg;
        cfg.deployment.J = J;
        const auto dep = place_aps(J, cfg.hall, cfg.deployment.M_TOT);
        struct Case
        {
            Mode mode;
            Scheme scheme;
        };
        for (const Case c : {Case{Mode::JT, Scheme::ZF}, Case{Mode::SAT, Scheme::ZF}, Case{Mode::SAT, Scheme::CZF}})
        {
            for (std::uint64_t d = 0; d < 1000; ++d)
            {
                const std::uint64_t seed = drop_seed(2024 + J, d);
                Rng pr = make_stream(seed, Stage::Positions);
                const auto acs = drop_acs(cfg.K, cfg.hall, pr);
                Rng cr = make_stream(seed, Stage::Channel);
                const auto real = build_channel(cfg, dep, acs, cr);
                const auto assoc = associate(real.large_scale);
                PrecodingMatrix p;
                try
                {
                    p = build_precoder(c.mode, c.scheme, real.h, assoc);
                }
                catch (const PrecoderError&)
                {
                    continue; // dimensionally infeasible drop
                }
                const RMatrix gains = link_gains(real.h, p.g); // (m, k) = |h_m g_k|^2
                for (int k = 0; k < cfg.K; ++k)
                    for (int m = 0; m < cfg.K; ++m)
                    {
                        if (m == k)
                            continue;
                        // SAT-ZF only nulls inside the anchor's served set.
                        if (c.mode == Mode::SAT && c.scheme == Scheme::ZF && assoc.anchor[m] != assoc.anchor[k])
                            continue;
                        const double r = gains(m, k) / gains(k, k);
                        if (r > worst)
                        {
                            worst = r;
                            worst_case = fmt("J=%d %s-%s", J, to_string(c.mode), to_string(c.scheme));
                        }
                        ++checked;
                    }
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-15 && secs < 60.0,
            fmt("max cross/signal %.2e (%s) over %d pairs, %.1f s", worst, worst_case.c_str(), checked, secs)};
}

// ---------------------------------------------------------------- 2. MPA

Outcome mpa_correctness()
{
    double max_oracle = 0.0, max_equal = 0.0, max_budget = 0.0;
    int dominance_failures = 0;
    for (int i = 0; i < 100; ++i)
    {
        Rng rng(derive_seed(77, static_cast<std::uint64_t>(i)));
        const int K = 2 + i % 3;
        const auto inst = random_instance(K, rng);
        const auto p = mpa_solve(inst);
        const RVector s = estimated_sinr(inst, p.p);
        const double t_oracle = estimated_sinr(inst, mpa_oracle(inst).p).minCoeff();
        const double t_epa = estimated_sinr(inst, epa(K, inst.p_ap).p).minCoeff();
        max_oracle = std::max(max_oracle, std::abs(s.minCoeff() - t_oracle) / t_oracle);
        max_equal = std::max(max_equal, (s.maxCoeff() - s.minCoeff()) / s.minCoeff());
        max_budget = std::max(max_budget, std::abs(inst.q.dot(p.p) - inst.p_ap) / inst.p_ap);
        if (s.minCoeff() < t_epa * (1.0 - 1e-12))
            ++dominance_failures;
    }
    return {max_oracle <= 1e-6 && max_equal <= 1e-6 && max_budget <= 1e-9 && dominance_failures == 0,
            fmt("oracle %.1e, equalization %.1e, budget %.1e, EPA dominance failures %d", max_oracle, max_equal,
                max_budget, dominance_failures)};
}

// ---------------------------------------------------------------- 3. MMSE

Outcome mmse()
{
    const double beta = 1e-12;
    auto ctx_for = [](int T) {
        EstimationContext ctx;
        ctx.p_ac = 0.1;
        ctx.T = T;
        ctx.sigma_ap2 = RVector::Constant(1, 2e-13);
        return ctx;
    };
    auto mse = [&](int T, std::uint64_t seed, bool check_identity, double& identity_err) {
        const auto ctx = ctx_for(T);
        const double c = mmse_shrinkage(beta, ctx, 0);
        const double zs = std::sqrt(pilot_noise_variance(ctx, 0));
        Rng rng(seed);
        ComplexNormal cn;
        double acc = 0.0;
        const int M = 1000;
        const int trials = 1000; // 1e6 entries
        for (int t = 0; t < trials; ++t)
        {
            CRowVector h(M), z(M);
            for (int m = 0; m < M; ++m)
            {
                h[m] = std::sqrt(beta) * cn(rng);
                z[m] = zs * cn(rng);
            }
            const CRowVector hh = estimate_channel(h, beta, ctx, 0, z);
            if (check_identity)
                identity_err = std::max(identity_err, (hh - c * (h + z)).cwiseAbs().maxCoeff() / hh.norm());
            acc += (hh - h).squaredNorm();
        }
        return acc / (static_cast<double>(trials) * M);
    };
    double identity_err = 0.0;
    const auto ctx = ctx_for(4);
    const double gt = ctx.p_ac * beta / ctx.sigma_ap2[0] * ctx.T;
    const double expected = beta / (1.0 + gt);
    const double measured = mse(4, 1, true, identity_err);
    const double rel = std::abs(measured - expected) / expected;
    bool monotone = true;
    double prev = 1e300;
    for (int T : {1, 2, 4, 8, 16})
    {
        double unused = 0.0;
        const double v = mse(T, 2, false, unused);
        monotone = monotone && v <= prev;
        prev = v;
    }
    return {rel <= 0.01 && monotone && identity_err == 0.0,
            fmt("error variance off by %.3f%%, monotone in T: %s, shrinkage identity residual %.1e", 100 * rel,
                monotone ? "yes" : "no", identity_err)};
}

// ---------------------------------------------------------------- 4. statistics

Outcome statistics()
{
    // Fading power vs Exp(beta).
    Rng fr(11);
    RMatrix b(1, 1);
    b(0, 0) = 3e-9;
    const CMatrix h = draw_fading(b, 100000, fr);
    std::vector<double> x(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i)
        x[i] = std::norm(h(0, i)) / b(0, 0);
    const double ks = test::ks_statistic(x, [](double v) { return 1.0 - std::exp(-v); });
    const double ks_crit = test::ks_critical_1pct(x.size());

    // LOS frequency at a few distances.
    const ChannelModelParams params;
    Rng lr(12);
    double worst_z = 0.0;
    for (double d : {0.5, 2.0, 4.0, 10.0})
    {
        const double pl = los_probability(d, params);
        const int n = 100000;
        int hits = 0;
        for (int i = 0; i < n; ++i)
            hits += large_scale_gain({0, 0, 6}, {d, 0, 2}, 3.5, params, lr).los;
        worst_z = std::max(worst_z, std::abs(hits / double(n) - pl) / std::sqrt(pl * (1 - pl) / n));
    }

    // Impulsive events at 1e-4 over 1e7 Bernoulli draws.
    Rng ir(13);
    const long n = 10000000;
    long events = 0;
    for (long i = 0; i < n / 4; ++i)
        events += sample_impulsive({1000.0, 1e-4}, 1.0, 4, ir).n_events();
    const double rate = static_cast<double>(events) / n;
    const double rate_z = std::abs(rate - 1e-4) / std::sqrt(1e-4 * (1 - 1e-4) / n);

    return {ks < ks_crit && worst_z <= 3.0 && rate_z <= 3.0,
            fmt("KS D=%.4f (crit %.4f), LOS worst %.2f sigma, impulsive rate %.3e (%.2f sigma)", ks, ks_crit,
                worst_z, rate, rate_z)};
}

// ---------------------------------------------------------------- 5. determinism

Outcome determinism()
{
    ScenarioConfig cfg;
    cfg.csi = CsiMode::Estimated;
    cfg.power_rule = PowerRule::MPA;
    cfg.impulsive.epsilon = 1e-3;
    const std::uint64_t drops = 20000;
    const auto a = run_campaign(cfg, drops, 5, {1, false});
    const auto b = run_campaign(cfg, drops, 5, {8, false});
    const auto c = run_campaign(cfg, drops, 5, {1, false});
    const bool same_summary = summary_json(a).dump() == summary_json(b).dump();
    std::ostringstream sa, sc;
    write_samples_csv(sa, a.distribution);
    write_samples_csv(sc, c.distribution);
    const bool same_bytes = sa.str() == sc.str() && summary_json(a).dump() == summary_json(c).dump();
    return {same_summary && same_bytes, fmt("summary identical for 1 vs 8 workers: %s; rerun byte-identical: %s",
                                            same_summary ? "yes" : "no", same_bytes ? "yes" : "no")};
}

// ---------------------------------------------------------------- trend campaigns

struct Stats
{
    double a5 = 0.0;
    double median = 0.0;
};

std::map<std::string, Stats> g_cache;

Stats campaign(const std::string& label, const ScenarioConfig& cfg)
{
    if (auto it = g_cache.find(label); it != g_cache.end())
        return it->second;
    const auto r = run_campaign(cfg, g_drops, 20240601, {g_workers, false});
    Stats s{availability(r.distribution, 1e-5), r.distribution.median_db()};
    std::printf("  [campaign] %-22s avail@1e-5 %7.2f dB  median %6.2f dB  (%.0f s)\n", label.c_str(), s.a5, s.median,
                r.wall_time_s);
    std::fflush(stdout);
    g_cache.emplace(label, s);
    return s;
}

ScenarioConfig jt(int J, Scheme scheme, CsiMode csi, PowerRule rule)
{
    ScenarioConfig cfg;
    cfg.K = 4;
    cfg.deployment.J = J;
    cfg.mode = Mode::JT;
    cfg.scheme = scheme;
    cfg.csi = csi;
    cfg.power_rule = rule;
    cfg.budget.T = 4;
    return cfg;
}

double a5(const std::string& label, const ScenarioConfig& cfg) { return campaign(label, cfg).a5; }

std::string label(const char* what, int J) { return fmt("%s J=%d", what, J); }

double pcsi_zf(int J) { return a5(label("JT-ZF PCSI EPA", J), jt(J, Scheme::ZF, CsiMode::Perfect, PowerRule::EPA)); }
double icsi_zf(int J)
{
    return a5(label("JT-ZF ICSI EPA", J), jt(J, Scheme::ZF, CsiMode::Estimated, PowerRule::EPA));
}
double icsi_mpa(int J)
{
    return a5(label("JT-ZF ICSI MPA", J), jt(J, Scheme::ZF, CsiMode::Estimated, PowerRule::MPA));
}

Outcome fig_deployments()
{
    const double z1 = pcsi_zf(1), z4 = pcsi_zf(4), z16 = pcsi_zf(16);
    const double m1 = a5(label("JT-MRT PCSI EPA", 1), jt(1, Scheme::MRT, CsiMode::Perfect, PowerRule::EPA));
    const double m4 = a5(label("JT-MRT PCSI EPA", 4), jt(4, Scheme::MRT, CsiMode::Perfect, PowerRule::EPA));
    const double m16 = a5(label("JT-MRT PCSI EPA", 16), jt(16, Scheme::MRT, CsiMode::Perfect, PowerRule::EPA));
    const double g4 = z4 - z1;
    const double g16 = z16 - z1;
    const bool zf_ok = g4 > 0 && g16 > g4 && std::abs(g4 - 19.0) <= 8.0 && std::abs(g16 - 29.0) <= 8.0;
    const bool mrt_ok = m1 > m4 && m4 > m16;
    return {zf_ok && mrt_ok, fmt("ZF gain J=4 %.1f dB (11..27), J=16 %.1f dB (21..37); MRT J=1/4/16 %.1f/%.1f/%.1f dB",
                                 g4, g16, m1, m4, m16)};
}

Outcome fig_icsi()
{
    const double l1 = pcsi_zf(1) - icsi_zf(1);
    const double l4 = pcsi_zf(4) - icsi_zf(4);
    const double l16 = pcsi_zf(16) - icsi_zf(16);
    const bool ok = std::abs(l1 - 6.0) <= 3.0 && std::abs(l16 - 1.0) <= 3.0 && l1 > l4 && l4 > l16;
    return {ok, fmt("ICSI loss J=1 %.2f dB (3..9), J=4 %.2f dB, J=16 %.2f dB (-2..4), strictly decreasing", l1, l4,
                    l16)};
}

Outcome fig_mpa()
{
    const double g4 = icsi_mpa(4) - icsi_zf(4);
    const double g16 = icsi_mpa(16) - icsi_zf(16);
    return {g4 > 0 && g16 > 0 && g4 <= 8.0 && g16 <= 8.0,
            fmt("MPA gain over EPA J=4 %.2f dB, J=16 %.2f dB (0..8)", g4, g16)};
}

Outcome fig_impulsive()
{
    auto with_eps = [](double eps) {
        auto cfg = jt(16, Scheme::ZF, CsiMode::Estimated, PowerRule::MPA);
        cfg.impulsive.gamma_linear = 1000.0;
        cfg.impulsive.epsilon = eps;
        return cfg;
    };
    const double e0 = icsi_mpa(16);
    const double e4 = a5("JT-ZF ICSI MPA eps=1e-4", with_eps(1e-4));
    const double e3 = a5("JT-ZF ICSI MPA eps=1e-3", with_eps(1e-3));
    const double loss = e0 - e4;
    return {std::abs(loss - 15.0) <= 6.0 && e0 >= e4 && e4 >= e3,
            fmt("loss at eps=1e-4 %.2f dB (9..21); avail eps=0/1e-4/1e-3 %.2f/%.2f/%.2f dB", loss, e0, e4, e3)};
}

Outcome fig_sat()
{
    auto sat = [](int J, Scheme scheme) {
        ScenarioConfig cfg;
        cfg.deployment.J = J;
        cfg.mode = Mode::SAT;
        cfg.scheme = scheme;
        return cfg;
    };
    const Stats czf4 = campaign("SAT-CZF PCSI EPA J=4", sat(4, Scheme::CZF));
    const Stats mrt4 = campaign("SAT-MRT PCSI EPA J=4", sat(4, Scheme::MRT));
    const Stats czf16 = campaign("SAT-CZF PCSI EPA J=16", sat(16, Scheme::CZF));
    const double gain = czf4.a5 - mrt4.a5;
    const double gap4 = czf4.median - czf4.a5;
    const double gap16 = czf16.median - czf16.a5;
    return {std::abs(gain - 16.0) <= 8.0 && gap16 - gap4 >= 10.0,
            fmt("CZF-MRT at J=4 %.2f dB (8..24); CZF median-tail gap J=16 %.2f dB vs J=4 %.2f dB (need +10)", gain,
                gap16, gap4)};
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    g_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (int i = 1; i < argc; ++i)
    {
        const std::string a = argv[i];
        if (a == "--drops" && i + 1 < argc)
            g_drops = std::strtoull(argv[++i], nullptr, 10);
        else if (a == "--workers" && i + 1 < argc)
            g_workers = std::atoi(argv[++i]);
        else if (a == "--only" && i + 1 < argc)
        {
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ','))
                only.insert(std::stoi(item));
        }
        else
        {
            std::fprintf(stderr, "usage: %s [--drops N] [--workers W] [--only 1,2,...]\n", argv[0]);
            return 2;
        }
    }
    set_warning_handler([](const std::string&) {});

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"ZF/CZF nulling under perfect CSI", nulling},
        {"MPA correctness against the bisection oracle", mpa_correctness},
        {"MMSE estimator error variance", mmse},
        {"fading, LOS and impulsive statistics", statistics},
        {"determinism across worker counts and reruns", determinism},
        {"deployment trend: ZF gains over J=1, MRT ordering", fig_deployments},
        {"imperfect-CSI loss shrinks with J", fig_icsi},
        {"max-min power allocation gain", fig_mpa},
        {"impulsive-noise availability loss", fig_impulsive},
        {"SAT: CZF vs MRT and the J=16 CZF tail", fig_sat},
    };

    std::printf("trend campaigns: %llu drops, K=4, %d worker(s)\n", static_cast<unsigned long long>(g_drops),
                g_workers);
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id))
            continue;
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %2d: %s -- %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
