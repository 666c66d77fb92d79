#include "dmimo/noise.hpp"

#include <cmath>

#include "dmimo/errors.hpp"
#include "dmimo/random.hpp"

namespace dmimo {

void validate(const ImpulsiveNoiseParams& params)
{
    if (!(params.gamma_linear >= 0.0) || !std::isfinite(params.gamma_linear))
        throw DomainError("impulsive.gamma_db: impulsive power ratio must be >= 0");
    if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0))
        throw DomainError("impulsive.epsilon: must lie in [0, 1]");
}

double thermal_noise_power(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw DomainError("thermal_noise_power: bandwidth must be > 0");
    const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

NoiseVector sample_impulsive(const ImpulsiveNoiseParams& params, double sigma_w2, int K, Rng& rng)
{
    NoiseVector out;
    out.sigma_w2 = sigma_w2;
    out.sigma_ki2 = RVector::Zero(K);
    for (int k = 0; k < K; ++k)
        if (uniform01(rng) < params.epsilon)
            out.sigma_ki2[k] = params.gamma_linear * sigma_w2;
    out.sigma_k2 = out.sigma_ki2.array() + sigma_w2;
    return out;
}

} // namespace dmimo
