#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dmimo/noise.hpp"
#include "dmimo/power.hpp"
#include "dmimo/types.hpp"

namespace dmimo {

struct SinrSample
{
    std::uint64_t drop_id = 0;
    int ac_id = 0;
    double sinr_linear = 0.0;

    double sinr_db() const { return 10.0 * std::log10(sinr_linear); }
};

/// |h_k g_m|^2 for every AC k and beamformer m.
RMatrix link_gains(const CMatrix& h, const CMatrix& g);

/// SINR of every AC with the true channels h and the designed precoder g.
RVector sinr(const CMatrix& h, const CMatrix& g, const PowerVector& power, const NoiseVector& noise);
RVector sinr(const RMatrix& gains, const PowerVector& power, const NoiseVector& noise);

/// Largest interference-to-signal ratio over all ACs (0 when K = 1).
double max_interference_ratio(const CMatrix& h, const CMatrix& g, const PowerVector& power);
double max_interference_ratio(const RMatrix& gains, const PowerVector& power);

/// Lower order statistic at 1-based rank ceil(p*n) of ascending `sorted`.
double empirical_quantile(std::span<const double> sorted, double p);

/// Sink for estimator-stability warnings; defaults to stderr.
void set_warning_handler(std::function<void(const std::string&)> handler);
void warn(const std::string& message);

/// Pooled (drop, AC) SINR samples. Order statistics are computed on demand
/// so merging buffers in any order yields the same statistics.
class SinrDistribution
{
  public:
    void add(std::uint64_t drop_id, int ac_id, double sinr_linear);
    void merge(const SinrDistribution& other);
    void reserve(std::size_t n) { samples_.reserve(n); }

    std::size_t size() const { return samples_.size(); }
    const std::vector<SinrSample>& samples() const { return samples_; }

    /// Linear SINR at probability p.
    double quantile(double p) const;
    double quantile_db(double p) const { return 10.0 * std::log10(quantile(p)); }
    double median_db() const { return quantile_db(0.5); }
    double mean_db() const;
    const std::vector<double>& sorted_linear() const;

  private:
    std::vector<SinrSample> samples_;
    mutable std::vector<double> sorted_;
    mutable bool sorted_valid_ = false;
};

/// SINR (dB) exceeded with probability 1 - level.
double availability(const SinrDistribution& dist, double level = 1e-5);

} // namespace dmimo
