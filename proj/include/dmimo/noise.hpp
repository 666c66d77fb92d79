#pragma once

#include "dmimo/types.hpp"

namespace dmimo {

struct ImpulsiveNoiseParams
{
    double gamma_linear = 1000.0; // impulsive-to-thermal power ratio
    double epsilon = 0.0;         // per-transmission event probability
};

struct NoiseVector
{
    double sigma_w2 = 0.0; // thermal, W
    RVector sigma_ki2;     // impulsive, W, per AC
    RVector sigma_k2;      // total, W, per AC

    int n_events() const { return static_cast<int>((sigma_ki2.array() > 0.0).count()); }
};

void validate(const ImpulsiveNoiseParams& params);

/// Thermal noise power in watts for a -174 dBm/Hz floor plus receiver noise figure.
double thermal_noise_power(double bandwidth_hz, double noise_figure_db);

/// Draws one Bernoulli(epsilon) impulsive event per AC. Always consumes
/// exactly K uniforms so streams stay aligned across epsilon values.
NoiseVector sample_impulsive(const ImpulsiveNoiseParams& params, double sigma_w2, int K, Rng& rng);

} // namespace dmimo
