#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dmimo/random.hpp"
#include "dmimo/types.hpp"

namespace dmimo::test {

inline CMatrix random_channel(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    ComplexNormal cn;
    CMatrix h(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            h(r, c) = cn(rng);
    return h;
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against the CDF `cdf`.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double F = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    return d;
}

// Critical value of the KS statistic at the 1% level (asymptotic).
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

} // namespace dmimo::test
