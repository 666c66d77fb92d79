#include "dmimo/csi.hpp"

#include <cmath>
#include <utility>

#include "dmimo/noise.hpp"
#include "dmimo/random.hpp"
#include "dmimo/scenario.hpp"

namespace dmimo {

EstimationContext make_estimation_context(const ScenarioConfig& cfg)
{
    EstimationContext ctx;
    ctx.p_ac = cfg.budget.p_ac;
    ctx.T = cfg.budget.T;
    ctx.sigma_ap2 = RVector::Constant(cfg.deployment.J,
                                      thermal_noise_power(cfg.budget.bandwidth_hz, cfg.budget.noise_figure_db));
    return ctx;
}

double mmse_shrinkage(double beta, const EstimationContext& ctx, int ap)
{
    const double gamma_t = ctx.p_ac * beta / ctx.sigma_ap2[ap] * ctx.T;
    return gamma_t / (1.0 + gamma_t);
}

double pilot_noise_variance(const EstimationContext& ctx, int ap)
{
    return ctx.sigma_ap2[ap] / (ctx.p_ac * ctx.T);
}

CRowVector estimate_channel(const CRowVector& h_kj, double beta_kj, const EstimationContext& ctx, int ap,
                            const CRowVector& z)
{
    return mmse_shrinkage(beta_kj, ctx, ap) * (h_kj + z);
}

CRowVector estimate_channel(const CRowVector& h_kj, double beta_kj, const EstimationContext& ctx, int ap, Rng& rng)
{
    const double noise_std = std::sqrt(pilot_noise_variance(ctx, ap));
    ComplexNormal cn;
    CRowVector z(h_kj.size());
    for (Eigen::Index m = 0; m < h_kj.size(); ++m)
        z[m] = noise_std * cn(rng);
    return estimate_channel(h_kj, beta_kj, ctx, ap, z);
}

ChannelRealization estimate_all(ChannelRealization real, const ScenarioConfig& cfg, Rng& rng)
{
    if (cfg.csi == CsiMode::Perfect)
        return estimate_all(std::move(real), cfg.csi, EstimationContext{}, rng);
    return estimate_all(std::move(real), cfg.csi, make_estimation_context(cfg), rng);
}

ChannelRealization estimate_all(ChannelRealization real, CsiMode csi, const EstimationContext& ctx, Rng& rng)
{
    if (csi == CsiMode::Perfect)
    {
        real.h_hat = real.h;
        return real;
    }
    const int K = real.large_scale.num_acs();
    const int J = real.large_scale.num_aps();
    const int M = real.antennas_per_ap();
    real.h_hat.resize(K, static_cast<Eigen::Index>(J) * M);
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < J; ++j)
            real.h_hat.block(k, j * M, 1, M) =
                estimate_channel(real.h.block(k, j * M, 1, M), real.large_scale.beta(k, j), ctx, j, rng);
    return real;
}

} // namespace dmimo
