#include "dmimo/channel.hpp"

#include <algorithm>
#include <cmath>

#include "dmimo/errors.hpp"
#include "dmimo/random.hpp"
#include "dmimo/scenario.hpp"

namespace dmimo {

namespace {

bool finite(const PathLossCoefficients& c)
{
    return std::isfinite(c.intercept_db) && std::isfinite(c.dist_exp_coeff) && std::isfinite(c.freq_coeff);
}

double evaluate(const PathLossCoefficients& c, double d_3d, double f_ghz)
{
    return c.intercept_db + c.dist_exp_coeff * std::log10(d_3d) + c.freq_coeff * std::log10(f_ghz);
}

} // namespace

void validate(const ChannelModelParams& p)
{
    if (!finite(p.pl_los))
        throw DomainError("channel.pl_los: coefficients must be finite");
    if (!finite(p.pl_nlos))
        throw DomainError("channel.pl_nlos: coefficients must be finite");
    if (!(p.shadow_sigma_los_db >= 0.0) || !std::isfinite(p.shadow_sigma_los_db))
        throw DomainError("channel.shadow_sigma_los_db: must be >= 0");
    if (!(p.shadow_sigma_nlos_db >= 0.0) || !std::isfinite(p.shadow_sigma_nlos_db))
        throw DomainError("channel.shadow_sigma_nlos_db: must be >= 0");
    if (!(p.los_decay_m > 0.0))
        throw DomainError("channel.los_decay_m: must be > 0");
    if (!(p.d_min_m > 0.0) || !std::isfinite(p.d_min_m))
        throw DomainError("channel.d_min_m: must be > 0");
}

ChannelModelParams dense_clutter_high_ap()
{
    ChannelModelParams p;
    p.pl_nlos = {33.63, 21.90, 20.00};
    p.shadow_sigma_nlos_db = 4.0;
    p.los_decay_m = 20.0 / std::log(10.0); // P_LOS(20 m) = 0.1
    return p;
}

double los_probability(double d_2d, const ChannelModelParams& params)
{
    if (!(d_2d >= 0.0))
        throw DomainError("los_probability: negative 2D distance");
    return std::exp(-d_2d / params.los_decay_m);
}

double path_loss_db(double d_3d, double f_ghz, bool los, const ChannelModelParams& params)
{
    if (!(f_ghz > 0.0))
        throw DomainError("path_loss_db: carrier frequency must be > 0");
    const double d = std::max(d_3d, params.d_min_m);
    const double pl_los = evaluate(params.pl_los, d, f_ghz);
    if (los)
        return pl_los;
    return std::max(evaluate(params.pl_nlos, d, f_ghz), pl_los);
}

LinkGain large_scale_gain(const Point3& ap, const Point3& ac, double f_ghz, const ChannelModelParams& params,
                          Rng& rng)
{
    StandardNormal normal;
    LinkGain out;
    out.los = uniform01(rng) < los_probability(distance_2d(ap, ac), params);
    const double sigma = out.los ? params.shadow_sigma_los_db : params.shadow_sigma_nlos_db;
    const double shadow_db = sigma * normal(rng);
    const double pl = path_loss_db(distance_3d(ap, ac), f_ghz, out.los, params);
    out.beta = std::pow(10.0, -(pl + shadow_db) / 10.0);
    return out;
}

CMatrix draw_fading(const RMatrix& beta, int antennas_per_ap, Rng& rng)
{
    const Eigen::Index K = beta.rows();
    const Eigen::Index J = beta.cols();
    const Eigen::Index M = antennas_per_ap;
    CMatrix h(K, J * M);
    ComplexNormal cn;
    for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index j = 0; j < J; ++j)
        {
            const double amplitude = std::sqrt(beta(k, j));
            for (Eigen::Index m = 0; m < M; ++m)
                h(k, j * M + m) = amplitude * cn(rng);
        }
    return h;
}

ChannelRealization build_channel(const ScenarioConfig& cfg, const Deployment& deployment,
                                 std::span<const Point3> ac_positions, Rng& rng)
{
    const int K = static_cast<int>(ac_positions.size());
    const int J = deployment.J;
    const double f_ghz = cfg.budget.carrier_hz / 1e9;

    ChannelRealization real;
    real.large_scale.beta.resize(K, J);
    real.large_scale.los.resize(K, J);
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < J; ++j)
        {
            const LinkGain link = large_scale_gain(deployment.ap_positions[j], ac_positions[k], f_ghz, cfg.channel, rng);
            real.large_scale.beta(k, j) = link.beta;
            real.large_scale.los(k, j) = link.los;
        }
    real.h = draw_fading(real.large_scale.beta, deployment.M, rng);
    return real;
}

} // namespace dmimo
