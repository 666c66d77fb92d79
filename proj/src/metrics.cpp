#include "dmimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>

#include "dmimo/errors.hpp"

namespace dmimo {

namespace {

// Row k: interference received by AC k, summed over m != k.
RVector interference(const RMatrix& gain, const RVector& p)
{
    const Eigen::Index K = p.size();
    RVector out = RVector::Zero(K);
    for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index m = 0; m < K; ++m)
            if (m != k)
                out[k] += gain(k, m) * p[m];
    return out;
}

} // namespace

RMatrix link_gains(const CMatrix& h, const CMatrix& g) { return h.lazyProduct(g).cwiseAbs2(); }

RVector sinr(const RMatrix& gains, const PowerVector& power, const NoiseVector& noise)
{
    const RVector signal = gains.diagonal().cwiseProduct(power.p);
    return signal.array() / (noise.sigma_k2 + interference(gains, power.p)).array();
}

RVector sinr(const CMatrix& h, const CMatrix& g, const PowerVector& power, const NoiseVector& noise)
{
    return sinr(link_gains(h, g), power, noise);
}

double max_interference_ratio(const RMatrix& gains, const PowerVector& power)
{
    const RVector signal = gains.diagonal().cwiseProduct(power.p);
    return (interference(gains, power.p).array() / signal.array()).maxCoeff();
}

double max_interference_ratio(const CMatrix& h, const CMatrix& g, const PowerVector& power)
{
    return max_interference_ratio(link_gains(h, g), power);
}

namespace {

std::mutex g_warning_mutex;
std::function<void(const std::string&)> g_warning_handler;

} // namespace

void set_warning_handler(std::function<void(const std::string&)> handler)
{
    std::lock_guard lock(g_warning_mutex);
    g_warning_handler = std::move(handler);
}

void warn(const std::string& message)
{
    std::lock_guard lock(g_warning_mutex);
    if (g_warning_handler)
        g_warning_handler(message);
    else
        std::cerr << "warning: " << message << '\n';
}

double empirical_quantile(std::span<const double> sorted, double p)
{
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("quantile level must lie in (0, 1]");
    const double n = static_cast<double>(sorted.size());
    double rank = p * n;
    // absorb representation error of p (e.g. 1e-5 * 4e6)
    if (const double r = std::round(rank); std::abs(rank - r) <= 1e-9 * std::max(1.0, r))
        rank = r;
    if (rank < 1.0)
        throw InsufficientSamplesError("quantile at p=" + std::to_string(p) + " needs at least " +
                                       std::to_string(static_cast<long long>(std::ceil(1.0 / p))) +
                                       " samples, have " + std::to_string(sorted.size()));
    if (rank < 10.0)
        warn("quantile at p=" + std::to_string(p) + " rests on fewer than 10 tail samples (p*n=" +
             std::to_string(rank) + "); estimate is unstable");
    const auto idx = static_cast<std::size_t>(std::ceil(rank)) - 1;
    return sorted[std::min(idx, sorted.size() - 1)];
}

void SinrDistribution::add(std::uint64_t drop_id, int ac_id, double sinr_linear)
{
    samples_.push_back({drop_id, ac_id, sinr_linear});
    sorted_valid_ = false;
}

void SinrDistribution::merge(const SinrDistribution& other)
{
    samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
    sorted_valid_ = false;
}

const std::vector<double>& SinrDistribution::sorted_linear() const
{
    if (!sorted_valid_)
    {
        sorted_.resize(samples_.size());
        std::transform(samples_.begin(), samples_.end(), sorted_.begin(),
                       [](const SinrSample& s) { return s.sinr_linear; });
        std::sort(sorted_.begin(), sorted_.end());
        sorted_valid_ = true;
    }
    return sorted_;
}

double SinrDistribution::quantile(double p) const { return empirical_quantile(sorted_linear(), p); }

double SinrDistribution::mean_db() const
{
    if (samples_.empty())
        throw InsufficientSamplesError("mean of an empty distribution");
    // sum the sorted values so the result is independent of pooling order
    const auto& s = sorted_linear();
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    return 10.0 * std::log10(mean);
}

double availability(const SinrDistribution& dist, double level) { return dist.quantile_db(level); }

} // namespace dmimo
