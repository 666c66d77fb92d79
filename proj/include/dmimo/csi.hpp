#pragma once

#include "dmimo/channel.hpp"
#include "dmimo/types.hpp"

namespace dmimo {

struct ScenarioConfig;

struct EstimationContext
{
    double p_ac = 0.0; // pilot power, W
    int T = 1;         // pilot length in symbols
    RVector sigma_ap2; // noise power at each AP, W
};

/// Context for a scenario: the same thermal noise (incl. noise figure) at every AP.
EstimationContext make_estimation_context(const ScenarioConfig& cfg);

/// Shrinkage coefficient gT/(1+gT) of the MMSE estimate, g = p_ac*beta/sigma_ap2.
double mmse_shrinkage(double beta, const EstimationContext& ctx, int ap);

/// Per-entry variance of the despread pilot noise z at an AP: sigma_ap2 / (p_ac T).
double pilot_noise_variance(const EstimationContext& ctx, int ap);

/// MMSE estimate c (h + z) for a given pilot-noise realization z.
CRowVector estimate_channel(const CRowVector& h_kj, double beta_kj, const EstimationContext& ctx, int ap,
                            const CRowVector& z);

/// MMSE estimate of one M-antenna block from orthogonal uplink pilots.
CRowVector estimate_channel(const CRowVector& h_kj, double beta_kj, const EstimationContext& ctx, int ap,
                            Rng& rng);

/// Fills h_hat. Perfect CSI copies h; estimated CSI draws every block independently.
ChannelRealization estimate_all(ChannelRealization realization, const ScenarioConfig& cfg, Rng& rng);
ChannelRealization estimate_all(ChannelRealization realization, CsiMode csi, const EstimationContext& ctx, Rng& rng);

} // namespace dmimo
