#pragma once

#include <span>
#include <utility>

#include "dmimo/types.hpp"

namespace dmimo {

struct ScenarioConfig;
struct Deployment;

// PL = intercept + dist_exp_coeff * log10(d_3d) + freq_coeff * log10(f_GHz)
struct PathLossCoefficients
{
    double intercept_db = 0.0;
    double dist_exp_coeff = 0.0;
    double freq_coeff = 0.0;
};

// Defaults: indoor-factory dense clutter with the APs embedded in the clutter
// (low AP variant). LOS decay is d_clutter / -ln(1 - r) with d_clutter = 2 m, r = 0.4.
struct ChannelModelParams
{
    PathLossCoefficients pl_los{31.84, 21.50, 19.00};
    PathLossCoefficients pl_nlos{18.60, 35.70, 20.00};
    double shadow_sigma_los_db = 4.3;
    double shadow_sigma_nlos_db = 7.2;
    double los_decay_m = 3.915230377942435;
    double d_min_m = 1.0;
};

// High-AP dense-clutter variant, kept for reference runs.
ChannelModelParams dense_clutter_high_ap();

void validate(const ChannelModelParams& params);

struct LargeScaleTable
{
    RMatrix beta;                                        // K x J linear power gains
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> los; // K x J

    int num_acs() const { return static_cast<int>(beta.rows()); }
    int num_aps() const { return static_cast<int>(beta.cols()); }
};

/// Row k of h is [h_{k,1} ... h_{k,J}]; antenna m of AP j sits at column j*M + m.
struct ChannelRealization
{
    CMatrix h;
    LargeScaleTable large_scale;
    CMatrix h_hat; // empty until filled by the CSI stage

    int antennas_per_ap() const { return static_cast<int>(h.cols() / large_scale.num_aps()); }
};

struct LinkGain
{
    double beta = 0.0;
    bool los = false;
};

double los_probability(double d_2d, const ChannelModelParams& params);

/// LOS or NLOS path loss in dB. The distance is clamped to d_min_m and the
/// NLOS value is floored at the LOS value.
double path_loss_db(double d_3d, double f_ghz, bool los, const ChannelModelParams& params);

/// Draws the LOS state and log-normal shadowing of one link. Consumes one
/// uniform and one normal regardless of the outcome.
LinkGain large_scale_gain(const Point3& ap, const Point3& ac, double f_ghz, const ChannelModelParams& params,
                          Rng& rng);

/// Large-scale table for every (AC, AP) pair, then i.i.d. Rayleigh blocks.
ChannelRealization build_channel(const ScenarioConfig& cfg, const Deployment& deployment,
                                 std::span<const Point3> ac_positions, Rng& rng);

/// Rayleigh fading over a given large-scale table, M antennas per AP.
CMatrix draw_fading(const RMatrix& beta, int antennas_per_ap, Rng& rng);

} // namespace dmimo
